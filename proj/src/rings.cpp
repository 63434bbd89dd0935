#include "resatlas/rings.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace resatlas {

namespace {

std::string partition_string(const Partition& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

int part(const Partition& p, int i) { return i < static_cast<int>(p.size()) ? p[i] : 0; }

void require_length3(const ResolutionFormat& fmt) {
    if (!fmt.valid || fmt.length() != 3) throw std::invalid_argument("need a valid length-3 format");
}

// (chi + alpha_1, ..., chi + alpha_{k-1}, chi) with k entries
void push_head(GLWeight& w, long long chi, const Partition& alpha, int k) {
    for (int i = 0; i < k - 1; ++i) w.push_back(chi + part(alpha, i));
    if (k > 0) w.push_back(chi);
}

// (lead, -chi - alpha_{k-1}, ..., -chi - alpha_1) with k entries
void push_tail(GLWeight& w, long long lead, long long chi, const Partition& alpha, int k) {
    if (k > 0) w.push_back(lead);
    for (int i = k - 2; i >= 0; --i) w.push_back(-chi - part(alpha, i));
}

}  // namespace

long long MuIndex::total() const { return a + b + c + partition_size(alpha) + partition_size(beta) + partition_size(gamma); }

std::string MuIndex::to_string() const {
    return "a=" + std::to_string(a) + " b=" + std::to_string(b) + " c=" + std::to_string(c) +
           " alpha=" + partition_string(alpha) + " beta=" + partition_string(beta) +
           " gamma=" + partition_string(gamma);
}

bool GLWeightQuadruple::dominant() const {
    return is_dominant(F3) && is_dominant(F2) && is_dominant(F1) && is_dominant(F0);
}

std::string gl_weight_string(const GLWeight& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

void check_mu(const MuIndex& mu, const ResolutionFormat& fmt) {
    require_length3(fmt);
    if (mu.a < 0 || mu.b < 0 || mu.c < 0) throw std::invalid_argument("a, b, c must be nonnegative");
    if (!is_partition(mu.alpha) || !is_partition(mu.beta) || !is_partition(mu.gamma))
        throw std::invalid_argument("alpha, beta, gamma must be partitions");
    if (parts(mu.alpha) > fmt.r[3] - 1) throw std::invalid_argument("alpha has more than r_3 - 1 parts");
    if (parts(mu.beta) > fmt.r[2] - 1) throw std::invalid_argument("beta has more than r_2 - 1 parts");
    if (parts(mu.gamma) > fmt.r[1] - 1) throw std::invalid_argument("gamma has more than r_1 - 1 parts");
}

GLWeightQuadruple ra_component(const MuIndex& mu, const ResolutionFormat& fmt) {
    check_mu(mu, fmt);
    int r0 = fmt.r[0], r1 = fmt.r[1], r2 = fmt.r[2], r3 = fmt.r[3];
    long long a = mu.a, b = mu.b, c = mu.c;
    GLWeightQuadruple q;
    push_head(q.F3, a - b + c, mu.alpha, r3);
    push_head(q.F2, b - c, mu.beta, r2);
    push_tail(q.F2, -a + b - c, a - b + c, mu.alpha, r3);
    push_head(q.F1, c, mu.gamma, r1);
    push_tail(q.F1, c - b, b - c, mu.beta, r2);
    q.F0.assign(r0, 0);
    push_tail(q.F0, -c, c, mu.gamma, r1);
    if (!q.dominant()) throw std::logic_error("ra_component produced a non-dominant weight for " + mu.to_string());
    return q;
}

std::vector<GLWeight> ra_general_component(const std::vector<long long>& x, const std::vector<Partition>& parts_in,
                                           const ResolutionFormat& fmt) {
    int n = fmt.length();
    if (!fmt.valid) throw std::invalid_argument("invalid format");
    if (static_cast<int>(x.size()) != n || static_cast<int>(parts_in.size()) != n)
        throw std::invalid_argument("need one degree and one partition per map");
    for (int i = 1; i <= n; ++i) {
        if (x[i - 1] < 0) throw std::invalid_argument("degrees must be nonnegative");
        if (!is_partition(parts_in[i - 1]) || parts(parts_in[i - 1]) > fmt.r[i] - 1)
            throw std::invalid_argument("partition " + std::to_string(i) + " violates its part bound");
    }
    std::vector<long long> chi(n + 2, 0);  // chi[0] = chi[n+1] = 0
    for (int i = 1; i <= n; ++i) {
        long long s = 0;
        for (int j = 1; j <= i; ++j) s += ((i - j) % 2 ? -1 : 1) * x[j - 1];
        chi[i] = s;
    }
    for (int i = 0; i < n; ++i)
        if (chi[i] + chi[i + 1] != x[i]) throw std::logic_error("partial Euler characteristics are inconsistent");
    std::vector<GLWeight> out(n + 1);
    for (int i = 0; i <= n; ++i) {
        GLWeight& w = out[i];
        if (i == 0) w.assign(fmt.r[0], 0);
        else push_head(w, chi[i], parts_in[i - 1], fmt.r[i]);
        if (i < n) push_tail(w, -chi[i + 1], chi[i + 1], parts_in[i], fmt.r[i + 1]);
    }
    return out;
}

std::vector<MuIndex> mu_with_total(const ResolutionFormat& fmt, int total) {
    require_length3(fmt);
    std::vector<MuIndex> out;
    for (int sa = 0; sa <= total; ++sa)
        for (int sb = 0; sa + sb <= total; ++sb)
            for (int sc = 0; sa + sb + sc <= total; ++sc)
                for (int s_al = 0; sa + sb + sc + s_al <= total; ++s_al)
                    for (int s_be = 0; sa + sb + sc + s_al + s_be <= total; ++s_be) {
                        int s_ga = total - sa - sb - sc - s_al - s_be;
                        for (auto& al : partitions_of(s_al, fmt.r[3] - 1))
                            for (auto& be : partitions_of(s_be, fmt.r[2] - 1))
                                for (auto& ga : partitions_of(s_ga, fmt.r[1] - 1)) {
                                    MuIndex mu;
                                    mu.a = sa, mu.b = sb, mu.c = sc;
                                    mu.alpha = al, mu.beta = be, mu.gamma = ga;
                                    out.push_back(mu);
                                }
                    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RaRow> ra_enumerate(const ResolutionFormat& fmt, int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
    std::vector<RaRow> rows;
    for (int total = 0; total <= cutoff; ++total)
        for (auto& mu : mu_with_total(fmt, total)) rows.push_back({mu, ra_component(mu, fmt)});

    std::set<GLWeightQuadruple> seen;
    std::set<std::pair<GLWeight, GLWeight>> even, odd;
    for (auto& row : rows) {
        if (!seen.insert(row.weights).second)
            throw std::logic_error("repeated summand at " + row.mu.to_string());
        if (!even.insert({row.weights.F2, row.weights.F0}).second)
            throw std::logic_error("even projection not injective at " + row.mu.to_string());
        if (!odd.insert({row.weights.F3, row.weights.F1}).second)
            throw std::logic_error("odd projection not injective at " + row.mu.to_string());
    }
    return rows;
}

HomologyReport homology_weights(const ResolutionFormat& fmt, int j, int cutoff) {
    if (!fmt.valid) throw std::invalid_argument("invalid format");
    int n = fmt.length();
    HomologyReport rep;
    if (j - 1 < 1 || j - 1 > n) throw std::invalid_argument("homology degree j - 1 must lie in 1..n");
    if (j - 1 >= n - 1) return rep;
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");

    // weights on F_0..F_n for given psi (psi[0] = 0) and partitions beta^{(i)}
    auto assemble = [&](const std::vector<long long>& psi, const std::vector<Partition>& beta) {
        std::vector<GLWeight> out(n + 1);
        for (int i = 0; i <= n; ++i) {
            GLWeight& w = out[i];
            if (i == 0) w.assign(fmt.r[0], 0);
            else push_head(w, psi[i], beta[i - 1], fmt.r[i]);
            if (i < n) {
                long long lead = (i == j - 1 ? 1 : 0) - psi[i + 1];
                push_tail(w, lead, psi[i + 1], beta[i], fmt.r[i + 1]);
            }
        }
        return out;
    };

    std::vector<long long> y(n, 0);
    std::vector<Partition> beta(n);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            std::vector<long long> psi(n + 1, 0);
            for (int k = 1; k <= n; ++k) psi[k] = y[k - 1] - psi[k - 1];
            auto w = assemble(psi, beta);
            bool dom = std::all_of(w.begin(), w.end(), [](const GLWeight& v) { return is_dominant(v); });
            if (dom) rep.weights.push_back(std::move(w));
            return;
        }
        int ymax = (i + 1 == j + 1) ? 0 : left;  // y^{(j+1)} = 0
        for (int yi = 0; yi <= ymax; ++yi)
            for (int sb = 0; yi + sb <= left; ++sb)
                for (auto& p : partitions_of(sb, fmt.r[i + 1] - 1)) {
                    y[i] = yi;
                    beta[i] = p;
                    rec(i + 1, left - yi - sb);
                }
        y[i] = 0;
        beta[i].clear();
    };
    rec(0, cutoff);
    std::sort(rep.weights.begin(), rep.weights.end());

    std::vector<long long> psi(n + 1, 0);
    for (int i = 1; i <= j - 1; ++i) psi[i] = ((j - 1 - i) % 2) ? -1 : 1;
    rep.generator = assemble(psi, std::vector<Partition>(n));
    const GLWeight& g = rep.generator[j - 1];
    int rk = fmt.r[j - 1] + 1;
    for (long long shift : {g.back(), g.back() - 1}) {
        bool match = static_cast<int>(g.size()) >= rk;
        for (std::size_t k = 0; k < g.size() && match; ++k)
            if (g[k] - shift != (static_cast<int>(k) < rk ? 1 : 0)) match = false;
        if (match) rep.generator_is_wedge = true;
    }
    return rep;
}

RspecComponent rspec_component(const MuIndex& mu, const ResolutionFormat& fmt) {
    auto q = ra_component(mu, fmt);
    RspecComponent out;
    out.sigma = q.F3;
    out.theta = q.F2;
    out.tau = q.F1;
    out.phi = q.F0;
    auto g = TpqrGraph::make(fmt.p(), fmt.q(), fmt.rr());
    int p = g.p, qq = g.q, r = g.r;
    const auto& tau = out.tau;    // 1-based in the formulas below
    const auto& sigma = out.sigma;
    Weight lam(g.n, 0);
    lam[g.u()] = tau[p - 1] - tau[p];
    for (int i = 1; i <= p - 1; ++i) lam[g.x(i)] = tau[p - i - 1] - tau[p - i];
    for (int k = 1; k <= qq - 1; ++k) lam[g.y(k)] = tau[p + k - 1] - tau[p + k];
    lam[g.z1()] = mu.a;
    for (int i = 1; i <= r - 2; ++i) lam[g.z(i + 1)] = sigma[r - 2 - i] - sigma[r - 1 - i];
    out.lambda = lam;
    return out;
}

GLWeight tau_from_lambda(const TpqrGraph& g, const Weight& lambda, long long last) {
    int N = g.p + g.q;
    GLWeight tau(N, 0);
    tau[N - 1] = last;
    for (int k = g.q - 1; k >= 1; --k) tau[g.p + k - 1] = tau[g.p + k] + lambda[g.y(k)];
    tau[g.p - 1] = tau[g.p] + lambda[g.u()];
    for (int i = 1; i <= g.p - 1; ++i) tau[g.p - i - 1] = tau[g.p - i] + lambda[g.x(i)];
    return tau;
}

std::vector<GeneratorFamily> semigroup_generators(const ResolutionFormat& fmt) {
    require_length3(fmt);
    int r1 = fmt.r[1], r2 = fmt.r[2], r3 = fmt.r[3];
    std::vector<GeneratorFamily> fams(6);
    for (int k = 0; k < 6; ++k) fams[k].number = k + 1;
    auto ones = [](int m) { return Partition(m, 1); };

    for (int i = 1; i <= r3 - 1; ++i) {
        MuIndex mu;
        mu.alpha = ones(i);
        fams[0].members.push_back(mu);
    }
    if (r3 == 1) fams[0].note = "empty range: r_3 = 1";
    else fams[0].labels = {"d_3", "p_1", "p_2", "..."};

    fams[1].members.push_back(MuIndex{1, 0, 0, {}, {}, {}});
    fams[1].labels = r3 == 1 ? std::vector<std::string>{"d_3", "p_1", "v_2", "..."}
                             : std::vector<std::string>{"minors of family 1"};

    for (int j = 1; j <= r2 - 1; ++j) {
        MuIndex mu;
        mu.beta = ones(j);
        fams[2].members.push_back(mu);
    }
    if (r2 == 1) fams[2].note = "empty range: r_2 = 1";
    else fams[2].labels = {"d_2", "w_0", "w_1", "..."};

    fams[3].members.push_back(MuIndex{0, 1, 0, {}, {}, {}});
    fams[3].labels = r1 == 1 ? std::vector<std::string>{"a_2", "p'_1", "..."} : std::vector<std::string>{"u_0", "..."};

    for (int k = 1; k <= r1 - 1; ++k) {
        MuIndex mu;
        mu.gamma = ones(k);
        fams[4].members.push_back(mu);
    }
    if (r1 == 1) fams[4].note = "empty range: r_1 = 1";

    fams[5].members.push_back(MuIndex{0, 0, 1, {}, {}, {}});
    if (r1 == 1) fams[5].labels = {"a_1"};
    return fams;
}

KStarComplex kstar_terms(const GLWeight& sigma, const GLWeight& tau, long long t, const ResolutionFormat& fmt,
                         long long u_offset) {
    require_length3(fmt);
    int r1 = fmt.r[1], r2 = fmt.r[2], r3 = fmt.r[3];
    if (static_cast<int>(sigma.size()) != r3) throw std::invalid_argument("sigma must have r_3 entries");
    if (static_cast<int>(tau.size()) != r1 + r2) throw std::invalid_argument("tau must have r_1 + r_2 entries");
    if (!is_dominant(sigma) || !is_dominant(tau)) throw std::invalid_argument("sigma and tau must be dominant");
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    KStarComplex k;
    k.t = t;
    k.u = tau[r1] + 1 - tau[r1 + 1] + u_offset;  // tau_{r1+2} + u = tau_{r1+1} + 1
    k.bottom = {sigma, tau, "K_0"};

    KStarTerm mid{sigma, tau, "K_1"};
    mid.sigma[0] += t;
    for (int i = 0; i <= r1; ++i) mid.tau[i] += t;
    k.middle = mid;

    KStarTerm a{sigma, tau, "K_2'"};
    a.sigma[0] += t + k.u;
    for (int i = 0; i < r1; ++i) a.tau[i] += t + k.u;
    a.tau[r1] += t;
    a.tau[r1 + 1] += k.u;
    k.top.push_back(a);

    if (r3 >= 2) {
        k.s = sigma[0] + 1 - sigma[1];  // sigma_2 + s = sigma_1 + 1
        KStarTerm b{sigma, tau, "K_2''"};
        b.sigma[0] += t;
        b.sigma[1] += k.s;
        for (int i = 0; i <= r1; ++i) b.tau[i] += t + k.s;
        k.top.push_back(b);
    }
    return k;
}

Weight kstar_lambda(const TpqrGraph& g, const GLWeight& sigma, const GLWeight& tau, long long a) {
    Weight lam(g.n, 0);
    int p = g.p;
    lam[g.u()] = tau[p - 1] - tau[p];
    for (int i = 1; i <= p - 1; ++i) lam[g.x(i)] = tau[p - i - 1] - tau[p - i];
    for (int k = 1; k <= g.q - 1; ++k) lam[g.y(k)] = tau[p + k - 1] - tau[p + k];
    lam[g.z1()] = a;
    for (int i = 1; i + 1 <= g.r - 1; ++i) lam[g.z(i + 1)] = sigma[i - 1] - sigma[i];
    return lam;
}

namespace {

// Undo a chain of consecutive differences d_m = v_m - v_{m+1} (m = 1..N-1)
// given the sum of v; nullopt when the sum is incompatible.
std::optional<GLWeight> undifference(const std::vector<long long>& d, long long sum) {
    long long N = static_cast<long long>(d.size()) + 1;
    long long weighted = 0;
    for (long long m = 1; m < N; ++m) weighted += m * d[m - 1];
    if ((sum - weighted) % N != 0) return std::nullopt;
    GLWeight v(N);
    v[N - 1] = (sum - weighted) / N;
    for (long long m = N - 1; m >= 1; --m) v[m - 1] = v[m] + d[m - 1];
    return v;
}

long long sum_of(const GLWeight& w) {
    long long s = 0;
    for (auto x : w) s += x;
    return s;
}

}  // namespace

CrosscheckReport dictionary_crosscheck(const GLWeight& sigma, const GLWeight& tau, long long t,
                                       const ResolutionFormat& fmt, long long u_offset) {
    auto k = kstar_terms(sigma, tau, t, fmt, u_offset);
    auto g = TpqrGraph::make(fmt.p(), fmt.q(), fmt.rr());
    auto A = cartan_matrix(g);
    Weight lambda = kstar_lambda(g, sigma, tau, t - 1);
    auto bgg = bgg_initial_terms(g, lambda);
    CrosscheckReport rep;
    rep.ok = bgg.closed_forms_ok;
    for (auto& note : bgg.notes) rep.lines.push_back("closed form: " + note);

    // BGG weight -> (sigma', tau') through the inverse dictionary
    auto convert = [&](const std::vector<int>& word, const Weight& nu) -> std::optional<std::pair<GLWeight, GLWeight>> {
        long long lvl = dot_shift(A, word, lambda)[g.z1()];
        std::vector<long long> dz, dt;
        for (int i = 2; i <= g.r - 1; ++i) dz.push_back(nu[g.z(i)]);
        for (int m = 1; m <= g.p + g.q - 1; ++m) {
            int v = m < g.p ? g.x(g.p - m) : m == g.p ? g.u() : g.y(m - g.p);
            dt.push_back(nu[v]);
        }
        auto s2 = undifference(dz, sum_of(sigma) + lvl);
        auto t2 = undifference(dt, sum_of(tau) + static_cast<long long>(g.p) * lvl);
        if (!s2 || !t2) return std::nullopt;
        return std::make_pair(*s2, *t2);
    };

    auto compare = [&](std::size_t layer, const std::vector<KStarTerm>& terms) {
        std::multiset<std::pair<GLWeight, GLWeight>> from_bgg, from_k;
        for (std::size_t e = 0; e < bgg.layers[layer].size(); ++e) {
            auto conv = convert(bgg.words[layer][e], bgg.layers[layer][e]);
            if (!conv) {
                rep.ok = false;
                rep.lines.push_back("layer " + std::to_string(layer) + ": weight " +
                                    weight_to_string(g, bgg.layers[layer][e]) + " has no integral preimage");
                continue;
            }
            from_bgg.insert(*conv);
        }
        for (auto& term : terms) from_k.insert({term.sigma, term.tau});
        bool same = from_bgg == from_k;
        std::string line = "layer " + std::to_string(layer) + (same ? ": match" : ": MISMATCH");
        for (auto& term : terms)
            line += "  " + term.name + " " + gl_weight_string(term.sigma) + " " + gl_weight_string(term.tau);
        rep.lines.push_back(line);
        if (!same) rep.ok = false;
    };
    compare(0, {k.bottom});
    compare(1, {k.middle});
    compare(2, k.top);
    return rep;
}

BigInt irreducible_dim(const GCM& A, const Weight& lambda) {
    BigRat d = weyl_dimension(A, lambda);
    if (d.get_den() != 1) throw std::logic_error("Weyl dimension is not an integer");
    if (A.size() <= 6) {
        BigInt total = weyl_kac_character(A, lambda, 0, 0).total;
        if (total != d.get_num()) throw std::logic_error("Weyl-Kac total disagrees with the Weyl dimension formula");
    }
    return d.get_num();
}

std::vector<HilbertCell> hilbert_truncation(const ResolutionFormat& fmt, int cutoff) {
    require_length3(fmt);
    if (classify(fmt.p(), fmt.q(), fmt.rr()).kind != TpqrKind::Finite)
        throw std::invalid_argument("hilbert_truncation needs a Dynkin graph");
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
    auto g = TpqrGraph::make(fmt.p(), fmt.q(), fmt.rr());
    auto A = cartan_matrix(g);
    std::map<Weight, BigInt> memo;
    std::map<std::vector<long long>, BigInt> cells;
    for (int total = 0; total <= cutoff; ++total)
        for (auto& mu : mu_with_total(fmt, total)) {
            auto rs = rspec_component(mu, fmt);
            for (auto v : rs.lambda)
                if (v < 0) throw std::logic_error("dictionary weight not dominant for " + mu.to_string());
            auto it = memo.find(rs.lambda);
            if (it == memo.end()) it = memo.emplace(rs.lambda, irreducible_dim(A, rs.lambda)).first;
            BigInt dim = schur_dim(rs.phi) * schur_dim(rs.theta) * it->second;
            std::vector<long long> md{mu.a, mu.b, mu.c, partition_size(mu.alpha), partition_size(mu.beta),
                                      partition_size(mu.gamma)};
            cells[md] += dim;
        }
    std::vector<HilbertCell> out;
    for (auto& [md, d] : cells) out.push_back({md, d});
    std::sort(out.begin(), out.end(), [](const HilbertCell& x, const HilbertCell& y) {
        long long sx = 0, sy = 0;
        for (auto v : x.multidegree) sx += v;
        for (auto v : y.multidegree) sy += v;
        return sx != sy ? sx < sy : x.multidegree > y.multidegree;
    });
    return out;
}

}  // namespace resatlas
