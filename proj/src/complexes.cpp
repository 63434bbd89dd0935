#include "resatlas/complexes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "resatlas/format.hpp"

namespace resatlas {

void FreeComplex::check_shapes() const {
    if (f.size() != d.size() + 1) throw std::invalid_argument("complex: need one more rank than maps");
    for (int i = 1; i <= length(); ++i)
        if (map(i).rows() != f[i - 1] || map(i).cols() != f[i])
            throw std::invalid_argument("complex: d_" + std::to_string(i) + " has the wrong shape");
}

CompositionReport verify_complex(const FreeComplex& c) {
    c.check_shapes();
    CompositionReport rep;
    for (int i = 1; i < c.length(); ++i) {
        PMatrix prod = matmul(c.map(i), c.map(i + 1));
        for (int r = 0; r < prod.rows(); ++r)
            for (int col = 0; col < prod.cols(); ++col)
                if (!prod(r, col).is_zero()) {
                    rep.ok = false;
                    rep.nonzero.push_back("d_" + std::to_string(i) + "*d_" + std::to_string(i + 1) + " (" +
                                          std::to_string(r + 1) + "," + std::to_string(col + 1) +
                                          "): " + prod(r, col).to_string());
                }
    }
    return rep;
}

namespace {

std::string index_list(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
    return s;
}

std::vector<int> expected_ranks(const std::vector<int>& f) {
    auto fmt = derive_ranks(f);
    if (!fmt.valid) throw std::invalid_argument("complex format is invalid: " + fmt.diagnosis);
    return std::vector<int>(fmt.r.begin() + 1, fmt.r.end());
}

std::vector<int> complement(int n, const std::vector<int>& s) {
    std::vector<char> in(n, 0);
    for (int x : s) in[x] = 1;
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (!in[i]) out.push_back(i);
    return out;
}

int concat_sign(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> seq = a;
    seq.insert(seq.end(), b.begin(), b.end());
    return permutation_sign(seq);
}

}  // namespace

RankReport be_rank_check(const FreeComplex& c, std::uint64_t seed) {
    c.check_shapes();
    RankReport rep;
    rep.expected = expected_ranks(c.f);
    std::vector<MPoly> avoid;
    std::vector<int> vars;
    for (auto& m : c.d)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                for (int v : m(i, j).variables()) vars.push_back(v);

    for (int i = 1; i <= c.length(); ++i) {
        int r = rep.expected[i - 1];
        const PMatrix& m = c.map(i);
        bool found = false;
        std::size_t tried = 0;
        for (auto& rows : k_subsets(m.rows(), r)) {
            for (auto& cols : k_subsets(m.cols(), r)) {
                if (++tried > 4000) break;
                MPoly mi = minor(m, rows, cols);
                if (mi.is_zero()) continue;
                avoid.push_back(mi);
                rep.certificate.push_back("d_" + std::to_string(i) + " minor rows {" + index_list(rows) + "} cols {" +
                                          index_list(cols) + "} nonzero");
                found = true;
                break;
            }
            if (found || tried > 4000) break;
        }
        if (!found) {
            rep.certificate.push_back("d_" + std::to_string(i) + ": no nonzero " + std::to_string(r) + "x" +
                                      std::to_string(r) + " minor");
            rep.observed.assign(rep.expected.size(), 0);
            for (int k = 1; k <= c.length(); ++k) {
                Assignment zero;
                for (int v : vars) zero[v] = 0;
                rep.observed[k - 1] = rank_at(c.map(k), zero);
            }
            return rep;
        }
    }

    // single-variable entries of I(d_n) as a depth witness for the last map
    const PMatrix& last = c.map(c.length());
    if (rep.expected.back() == 1 && last.cols() == 1) {
        std::set<int> singles;
        for (int i = 0; i < last.rows(); ++i) {
            int v = last(i, 0).single_variable();
            if (v >= 0) singles.insert(v);
        }
        if (static_cast<int>(singles.size()) >= c.length())
            rep.certificate.push_back("I(d_" + std::to_string(c.length()) + ") contains " +
                                      std::to_string(singles.size()) + " distinct variables");
    }

    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    rep.point = seeded_random_point(seed, vars, avoid);
    for (int i = 1; i <= c.length(); ++i) rep.observed.push_back(rank_at(c.map(i), rep.point));
    rep.ok = rep.observed == rep.expected;
    return rep;
}

std::vector<QMatrix> specialize(const FreeComplex& c, const Assignment& point) {
    std::vector<QMatrix> out;
    for (auto& m : c.d) out.push_back(evaluate(m, point));
    return out;
}

MultiplierReport be_multipliers(const std::vector<QMatrix>& d, const std::vector<int>& f) {
    int n = static_cast<int>(d.size());
    if (static_cast<int>(f.size()) != n + 1) throw std::invalid_argument("be_multipliers: need one more rank than maps");
    for (int i = 1; i <= n; ++i)
        if (d[i - 1].rows() != f[i - 1] || d[i - 1].cols() != f[i])
            throw std::invalid_argument("be_multipliers: d_" + std::to_string(i) + " has the wrong shape");
    MultiplierReport rep;
    rep.ranks = expected_ranks(f);
    for (int i = 1; i <= n; ++i)
        if (rank(d[i - 1]) != rep.ranks[i - 1])
            throw std::invalid_argument("be_multipliers: d_" + std::to_string(i) + " has rank " +
                                        std::to_string(rank(d[i - 1])) + ", expected " +
                                        std::to_string(rep.ranks[i - 1]));
    rep.a.assign(n, {});
    rep.ok = true;

    // a_n is the vector of maximal minors of d_n
    {
        int r = rep.ranks[n - 1];
        std::vector<int> all(f[n]);
        std::iota(all.begin(), all.end(), 0);
        for (auto& I : k_subsets(f[n - 1], r)) rep.a[n - 1].push_back(minor(d[n - 1], I, all));
        rep.lines.push_back("a_" + std::to_string(n) + " = maximal minors of d_" + std::to_string(n));
    }
    for (int i = n - 1; i >= 1; --i) {
        int r = rep.ranks[i - 1];
        int fi = f[i];
        auto Is = k_subsets(f[i - 1], r);
        auto Js = k_subsets(fi, r);
        auto Ks = k_subsets(fi, fi - r);
        auto next_at = [&](const std::vector<int>& K) {
            auto it = std::find(Ks.begin(), Ks.end(), K);
            return rep.a[i][static_cast<std::size_t>(it - Ks.begin())];
        };
        // pick a column J0 with a_{i+1}[J0^c] != 0
        const std::vector<int>* J0 = nullptr;
        BigRat pivot;
        for (auto& J : Js) {
            BigRat v = next_at(complement(fi, J)) * concat_sign(J, complement(fi, J));
            if (v != 0) {
                J0 = &J;
                pivot = v;
                break;
            }
        }
        if (!J0) throw std::logic_error("be_multipliers: a_" + std::to_string(i + 1) + " vanishes");
        for (auto& I : Is) rep.a[i - 1].push_back(minor(d[i - 1], I, *J0) / pivot);
        std::size_t bad = 0;
        for (std::size_t ii = 0; ii < Is.size(); ++ii)
            for (auto& J : Js) {
                auto Jc = complement(fi, J);
                BigRat lhs = minor(d[i - 1], Is[ii], J);
                BigRat rhs = rep.a[i - 1][ii] * BigRat(concat_sign(J, Jc)) * next_at(Jc);
                if (lhs != rhs) ++bad;
            }
        rep.lines.push_back("wedge^" + std::to_string(r) + " d_" + std::to_string(i) + " = a_" + std::to_string(i) +
                            " a_" + std::to_string(i + 1) + "^*: " +
                            (bad ? std::to_string(bad) + " entries differ" : "all " +
                                                                                 std::to_string(Is.size() * Js.size()) +
                                                                                 " entries agree"));
        if (bad) rep.ok = false;
    }
    return rep;
}

FreeComplex koszul_complex(int n) {
    if (n < 1) throw std::invalid_argument("koszul_complex: need n >= 1");
    FreeComplex c;
    c.name = "koszul(" + std::to_string(n) + ")";
    std::vector<std::vector<std::vector<int>>> basis(n + 1);
    for (int k = 0; k <= n; ++k) {
        basis[k] = k_subsets(n, k);
        c.f.push_back(static_cast<int>(basis[k].size()));
    }
    for (int k = 1; k <= n; ++k) {
        PMatrix m(c.f[k - 1], c.f[k]);
        for (std::size_t col = 0; col < basis[k].size(); ++col) {
            const auto& S = basis[k][col];
            for (std::size_t pos = 0; pos < S.size(); ++pos) {
                std::vector<int> T = S;
                T.erase(T.begin() + static_cast<long>(pos));
                auto row = std::find(basis[k - 1].begin(), basis[k - 1].end(), T) - basis[k - 1].begin();
                MPoly x = MPoly::var("T" + std::to_string(S[pos] + 1));
                m(static_cast<int>(row), static_cast<int>(col)) = pos % 2 ? -x : x;
            }
        }
        c.d.push_back(m);
    }
    return c;
}

FreeComplex split_d4_complex() {
    FreeComplex c;
    c.name = "split(1,4,4,1)";
    c.f = {1, 4, 4, 1};
    PMatrix d1(1, 4), d2(4, 4), d3(4, 1);
    d1(0, 3) = 1;
    for (int i = 0; i < 3; ++i) d2(i, i) = 1;
    d3(3, 0) = 1;
    c.d = {d1, d2, d3};
    return c;
}

// ---------------------------------------------------------------- A-type family

namespace {
std::string vname(const std::string& stem, int i, int j) { return stem + std::to_string(i) + "_" + std::to_string(j); }
}  // namespace

ATypeFamily atype_family_build(int r3) {
    if (r3 < 1) throw std::invalid_argument("atype_family_build: r3 must be >= 1");
    int m = r3 + 2;
    PMatrix d3(m, r3), B(m, 3);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < r3; ++j) d3(i, j) = MPoly::var(vname("A", i + 1, j + 1));
        for (int j = 0; j < 3; ++j) B(i, j) = MPoly::var(vname("B", i + 1, j + 1));
    }
    std::vector<int> cols(r3);
    std::iota(cols.begin(), cols.end(), 0);
    std::vector<std::vector<MPoly>> minors(m, std::vector<MPoly>(m));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            std::vector<int> rows;
            for (int k = 0; k < m; ++k)
                if (k != i && k != j) rows.push_back(k);
            minors[i][j] = minor(d3, rows, cols);
        }

    ATypeFamily out;
    // (-1)^{i+j+1} reproduces the cross-product matrix at r3 = 1; the other
    // parity is kept as a fallback.
    for (int parity : {1, 0}) {
        PMatrix delta(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                MPoly v = ((i + j + parity) % 2) ? -minors[i][j] : minors[i][j];
                delta(i, j) = v;
                delta(j, i) = -v;
            }
        if (matmul(delta, d3).is_zero()) {
            out.delta = delta;
            out.delta_convention = parity ? "Delta_ij = (-1)^(i+j+1) * minor(i,j omitted)"
                                           : "Delta_ij = (-1)^(i+j) * minor(i,j omitted)";
            out.delta_kills_d3 = true;
            break;
        }
    }
    if (!out.delta_kills_d3) throw std::logic_error("atype_family_build: no sign convention gives Delta * d3 = 0");

    PMatrix Bt = B.transpose();
    PMatrix d2 = matmul(Bt, out.delta);
    out.X = matmul(d2, B);
    out.x = {out.X(1, 2), out.X(2, 0), out.X(0, 1)};
    const PMatrix& X = out.X;
    out.skew_pattern_ok = X(0, 0).is_zero() && X(1, 1).is_zero() && X(2, 2).is_zero() && X(1, 0) == -out.x[2] &&
                          X(0, 2) == -out.x[1] && X(2, 1) == -out.x[0];

    MPoly a1 = MPoly::var("a1");
    PMatrix d1(1, 3);
    for (int k = 0; k < 3; ++k) d1(0, k) = a1 * out.x[k];

    out.complex.name = "A-type(r3=" + std::to_string(r3) + ")";
    out.complex.f = {1, 3, m, r3};
    out.complex.d = {d1, d2, d3};
    return out;
}

// ---------------------------------------------------------------- monomial family

namespace {
int cyc(int i, int n) { return ((i - 1) % n + n) % n + 1; }  // 1-based cyclic index
}  // namespace

std::vector<MPoly> monomial_generators(int t) {
    if (t < 2) throw std::invalid_argument("monomial family needs t >= 2");
    int n = 2 * t;
    std::vector<MPoly> X(n + 1);
    for (int i = 1; i <= n; ++i) X[i] = MPoly::var("X" + std::to_string(i));
    std::vector<MPoly> p;
    for (int i = 1; i <= n; ++i) {
        MPoly prod = 1;
        for (int k = 1; k <= n; ++k)
            if (k != cyc(i - 2, n) && k != cyc(i - 1, n)) prod *= X[k];
        p.push_back(prod);
    }
    return p;
}

FreeComplex monomial_complex(int t) {
    auto p = monomial_generators(t);
    int n = 2 * t;
    auto X = [](int i) { return MPoly::var("X" + std::to_string(i)); };
    PMatrix d1(1, n), d2(n, n), d3(n, 1);
    for (int i = 1; i <= n; ++i) {
        d1(0, i - 1) = p[i - 1];
        d3(i - 1, 0) = X(cyc(i - 1, n));
        d2(i - 1, i - 1) = X(cyc(i - 2, n));
        d2(i - 1, cyc(i - 1, n) - 1) = -X(cyc(i - 1, n));
    }
    FreeComplex c;
    c.name = "monomial(t=" + std::to_string(t) + ")";
    c.f = {1, n, n, 1};
    c.d = {d1, d2, d3};
    return c;
}

// ---------------------------------------------------------------- split D4 model

namespace {

MPoly bvar(int i, int j) {
    if (i == j) return 0;
    if (i > j) return -MPoly::var("b" + std::to_string(j) + std::to_string(i));
    return MPoly::var("b" + std::to_string(i) + std::to_string(j));
}

// product e_i e_j on f_1..f_4 for any ordering
std::array<MPoly, 4> ee_any(const D4Tables& t, int i, int j) {
    if (i == j) return {0, 0, 0, 0};
    if (i < j) return t.ee.at({i, j});
    auto v = t.ee.at({j, i});
    for (auto& x : v) x = -x;
    return v;
}

}  // namespace

MPoly d4_pfaffian() { return bvar(1, 2) * bvar(3, 4) - bvar(1, 3) * bvar(2, 4) + bvar(1, 4) * bvar(2, 3); }

SplitD4Model d4_split_model() {
    SplitD4Model m;
    D4Tables& v = m.verbatim;
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) v.ee[{i, j}] = {0, 0, 0, bvar(i, j)};
    for (int i = 1; i <= 3; ++i) {
        std::array<MPoly, 4> e{0, 0, 0, bvar(i, 4)};
        e[i - 1] = -1;
        v.ee[{i, 4}] = e;
    }
    // e_i . f_j as printed
    const int table[4][4][3] = {
        // {sign, i', j'} meaning sign * b_{i'j'}; sign 0 means zero, 2 means the constant 1
        {{0, 0, 0}, {-1, 1, 2}, {-1, 1, 3}, {0, 0, 0}},
        {{1, 1, 2}, {0, 0, 0}, {-1, 2, 3}, {0, 0, 0}},
        {{1, 1, 3}, {1, 2, 3}, {0, 0, 0}, {0, 0, 0}},
        {{-1, 1, 4}, {-1, 2, 4}, {-1, 3, 4}, {2, 0, 0}},
    };
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            auto& e = table[i - 1][j - 1];
            v.ef[{i, j}] = e[0] == 0 ? MPoly(0) : e[0] == 2 ? MPoly(1) : MPoly(e[0]) * bvar(e[1], e[2]);
        }
    v.eee[{1, 2, 3}] = 0;
    v.eee[{1, 2, 4}] = bvar(1, 2);
    v.eee[{1, 3, 4}] = bvar(1, 3);
    v.eee[{2, 3, 4}] = bvar(2, 3);
    v.v2 = {bvar(2, 3), -bvar(1, 3), bvar(1, 2), d4_pfaffian()};

    m.complex = split_d4_complex();
    const PMatrix& d1 = m.complex.map(1);
    const PMatrix& d2 = m.complex.map(2);
    const PMatrix& d3 = m.complex.map(3);

    // e_i f_j from d_3(e f) = d_1(e) f - e d_2(f), with d_3(g) = f_4
    D4Tables& l = m.leibniz;
    l.ee = v.ee;
    l.v2 = v.v2;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            std::array<MPoly, 4> rhs{0, 0, 0, 0};
            rhs[j - 1] += d1(0, i - 1);
            for (int k = 1; k <= 4; ++k) {
                if (d2(k - 1, j - 1).is_zero()) continue;
                auto prod = ee_any(v, i, k);
                for (int s = 0; s < 4; ++s) rhs[s] -= d2(k - 1, j - 1) * prod[s];
            }
            // rhs must be a multiple of d_3(g)
            int pivot = 3;
            MPoly coef = rhs[pivot];
            for (int s = 0; s < 4; ++s)
                if (rhs[s] != coef * d3(s, 0))
                    throw std::logic_error("d4_split_model: e f product is not determined by the differentials");
            l.ef[{i, j}] = coef;
        }
    // e_i e_j e_k = (e_i e_j) e_k = sum_s coeff_s e_k f_s
    auto triple = [](const D4Tables& t, int i, int j, int k) {
        MPoly s = 0;
        auto prod = ee_any(t, i, j);
        for (int q = 1; q <= 4; ++q)
            if (!prod[q - 1].is_zero()) s += prod[q - 1] * t.ef.at({k, q});
        return s;
    };
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j)
            for (int k = j + 1; k <= 4; ++k) l.eee[{i, j, k}] = triple(l, i, j, k);

    for (auto& [key, val] : v.ef)
        if (val != l.ef.at(key))
            m.table_conflicts.push_back("e" + std::to_string(key.first) + "*f" + std::to_string(key.second) +
                                        ": printed " + val.to_string() + ", Leibniz rule gives " +
                                        l.ef.at(key).to_string());
    for (auto& [key, val] : v.eee) {
        auto [i, j, k] = key;
        MPoly assoc = triple(v, i, j, k);
        if (assoc != val)
            m.table_conflicts.push_back("e" + std::to_string(i) + "*e" + std::to_string(j) + "*e" + std::to_string(k) +
                                        ": printed " + val.to_string() + ", printed e*f table gives " +
                                        assoc.to_string());
    }
    return m;
}

D4RelationReport d4_relation_check() {
    auto model = d4_split_model();
    D4RelationReport rep;
    rep.pfaffian = d4_pfaffian();
    const PMatrix& d2 = model.complex.map(2);
    for (const auto* tables : {&model.verbatim, &model.leibniz}) {
        const D4Tables& t = *tables;
        auto p4 = [&](int i, int j) { return t.ee.at({i, j})[3]; };
        auto c1 = [&](int k) { return t.ef.at({k, 1}); };
        MPoly lhs0 = t.v2[3] * d2(0, 0);
        MPoly rhs0 = p4(2, 3) * c1(4) - p4(2, 4) * c1(3) + p4(3, 4) * c1(2);
        D4RelationSide best;
        best.c_table = tables == &model.verbatim ? "verbatim" : "leibniz";
        best.lhs = lhs0;
        best.rhs = rhs0;
        for (int mask = 0; mask < 8 && !best.found; ++mask) {
            std::array<int, 3> eps{mask & 1 ? -1 : 1, mask & 2 ? -1 : 1, mask & 4 ? -1 : 1};
            MPoly lhs = MPoly(eps[2]) * lhs0;
            MPoly rhs = MPoly(eps[0] * eps[1]) * rhs0;
            if (lhs == rep.pfaffian && rhs == rep.pfaffian) {
                best.eps = eps;
                best.found = true;
                best.lhs = lhs;
                best.rhs = rhs;
            }
        }
        rep.attempts.push_back(best);
        if (best.found && !rep.ok) {
            rep.ok = true;
            rep.chosen = best;
        }
    }
    return rep;
}

MPoly permute_b_variables(const MPoly& f, const std::array<int, 4>& perm) {
    MPoly out = 0;
    std::map<int, MPoly> image;
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j)
            image[VarRegistry::id("b" + std::to_string(i) + std::to_string(j))] = bvar(perm[i - 1], perm[j - 1]);
    for (auto& term : f.terms()) {
        MPoly mono(term.second);
        for (std::size_t v = 0; v < term.first.exps.size(); ++v)
            for (std::uint32_t e = 0; e < term.first.exps[v]; ++e) {
                auto it = image.find(static_cast<int>(v));
                mono *= it != image.end() ? it->second : MPoly::var(static_cast<int>(v));
            }
        out += mono;
    }
    return out;
}

// ---------------------------------------------------------------- q_1 coefficients

MPoly q1_coefficient(const std::vector<int>& f, const std::vector<int>& I, const std::vector<int>& J,
                     const std::vector<int>& K, int t) {
    auto fmt = derive_ranks(f);
    if (!fmt.valid || fmt.length() != 3) throw std::invalid_argument("q1: need a valid length-3 format");
    int r1 = fmt.r[1], r3 = fmt.r[3];
    int f1 = f[1], f2 = f[2], f3 = f[3];
    if (static_cast<int>(I.size()) != r1 + 1) throw std::invalid_argument("q1: |I| must be r_1 + 1");
    if (static_cast<int>(J.size()) != r3 || static_cast<int>(K.size()) != r3)
        throw std::invalid_argument("q1: |J| and |K| must be r_3");
    if (t < 1 || t > r3) throw std::invalid_argument("q1: t must lie in 1..r_3");
    for (int i : I)
        if (i < 1 || i > f1) throw std::invalid_argument("q1: index in I out of range");
    for (const auto* S : {&J, &K})
        for (int j : *S)
            if (j < 1 || j > f2) throw std::invalid_argument("q1: index in J or K out of range");

    auto zero_based = [](const std::vector<int>& v) {
        std::vector<int> o;
        for (int x : v) o.push_back(x - 1);
        return o;
    };
    auto I0 = zero_based(I), J0 = zero_based(J), K0 = zero_based(K);
    if (permutation_sign(I0) == 0 || permutation_sign(J0) == 0 || permutation_sign(K0) == 0) return 0;

    PMatrix d3(f2, f3), d2(f1, f2);
    for (int i = 0; i < f2; ++i)
        for (int j = 0; j < f3; ++j) d3(i, j) = MPoly::var(vname("P", i + 1, j + 1));
    for (int i = 0; i < f1; ++i)
        for (int j = 0; j < f2; ++j) d2(i, j) = MPoly::var(vname("Q", i + 1, j + 1));

    // minor with rows in the given order (sign of the reordering included)
    auto ordered_minor = [](const PMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
        std::vector<int> sr = rows;
        std::sort(sr.begin(), sr.end());
        return MPoly(permutation_sign(rows)) * minor(m, sr, cols);
    };

    std::vector<int> cols3;
    for (int c = 0; c < r3; ++c)
        if (c != t - 1) cols3.push_back(c);
    auto Ic = complement(f1, I0);
    int sign_I = concat_sign(I0, Ic);

    MPoly u = 0;
    for (int s = 0; s < r3; ++s) {
        int js = J0[s];
        if (std::find(K0.begin(), K0.end(), js) != K0.end()) continue;
        std::vector<int> rows3 = J0;
        rows3.erase(rows3.begin() + s);
        std::vector<int> lead{js};
        lead.insert(lead.end(), K0.begin(), K0.end());
        auto C = complement(f2, lead);
        int sign_C = concat_sign(lead, C);
        MPoly term = ordered_minor(d3, rows3, cols3) * minor(d2, Ic, C);
        int sign = (s % 2 ? -1 : 1) * sign_C * sign_I * ((t - 1) % 2 ? -1 : 1);
        u += MPoly(sign) * term;
    }
    return u;
}

namespace {

// Rows spanning {k : k * m = 0}.
QMatrix left_kernel(const QMatrix& m) {
    QMatrix a = m.transpose();  // kernel of a
    int rows = a.rows(), cols = a.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        for (int j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
        BigRat inv = 1 / a(r, c);
        for (int j = 0; j < cols; ++j) a(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            BigRat fac = a(i, c);
            for (int j = 0; j < cols; ++j) a(i, j) -= fac * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<int> free_cols;
    for (int c = 0; c < cols; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_cols.push_back(c);
    QMatrix k(static_cast<int>(free_cols.size()), cols);
    for (std::size_t n = 0; n < free_cols.size(); ++n) {
        k(static_cast<int>(n), free_cols[n]) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            k(static_cast<int>(n), pivots[i]) = -a(static_cast<int>(i), free_cols[n]);
    }
    return k;
}

}  // namespace

Assignment q1_complex_point(const std::vector<int>& f, std::uint64_t seed) {
    auto fmt = derive_ranks(f);
    if (!fmt.valid || fmt.length() != 3) throw std::invalid_argument("q1: need a valid length-3 format");
    int f1 = f[1], f2 = f[2], f3 = f[3];
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int attempt = 0; attempt < 64; ++attempt) {
        QMatrix d3(f2, f3);
        for (int i = 0; i < f2; ++i)
            for (int j = 0; j < f3; ++j) d3(i, j) = dist(rng);
        if (rank(d3) != fmt.r[3]) continue;
        QMatrix ker = left_kernel(d3);
        QMatrix mix(f1, ker.rows());
        for (int i = 0; i < f1; ++i)
            for (int j = 0; j < ker.rows(); ++j) mix(i, j) = dist(rng);
        QMatrix d2 = matmul(mix, ker);
        if (rank(d2) != fmt.r[2]) continue;
        Assignment pt;
        for (int i = 0; i < f2; ++i)
            for (int j = 0; j < f3; ++j) pt[VarRegistry::id(vname("P", i + 1, j + 1))] = d3(i, j);
        for (int i = 0; i < f1; ++i)
            for (int j = 0; j < f2; ++j) pt[VarRegistry::id(vname("Q", i + 1, j + 1))] = d2(i, j);
        return pt;
    }
    throw std::runtime_error("q1_complex_point: no point with the expected ranks found");
}

Q1SymmetryReport q1_symmetry_check(const std::vector<int>& f, std::uint64_t seed, int points) {
    auto fmt = derive_ranks(f);
    if (!fmt.valid || fmt.length() != 3) throw std::invalid_argument("q1: need a valid length-3 format");
    int r1 = fmt.r[1], r3 = fmt.r[3];
    struct Pair {
        MPoly sym, anti;
    };
    std::vector<Pair> polys;
    auto to1 = [](std::vector<int> v) {
        for (auto& x : v) ++x;
        return v;
    };
    auto Js = k_subsets(f[2], r3);
    for (auto& I : k_subsets(f[1], r1 + 1))
        for (std::size_t a = 0; a < Js.size(); ++a)
            for (std::size_t b = a + 1; b < Js.size(); ++b) {
                MPoly u = q1_coefficient(f, to1(I), to1(Js[a]), to1(Js[b]));
                MPoly v = q1_coefficient(f, to1(I), to1(Js[b]), to1(Js[a]));
                polys.push_back({u + v, u - v});
            }

    Q1SymmetryReport rep;
    rep.triples = polys.size();
    rep.points = points;

    // a free point: every variable independent
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<long> dist(-9, 9);
    Assignment free_pt;
    for (auto& [key, val] : q1_complex_point(f, seed)) free_pt[key] = dist(rng);
    for (auto& p : polys) {
        if (substitute(p.anti, free_pt) != 0) ++rep.antisym_nonzero_generic;
        if (substitute(p.sym, free_pt) != 0) ++rep.sym_nonzero_generic;
    }
    for (int k = 0; k < points; ++k) {
        Assignment pt = q1_complex_point(f, seed + static_cast<std::uint64_t>(k));
        for (auto& p : polys)
            if (substitute(p.sym, pt) != 0) ++rep.sym_nonzero_on_complex;
    }
    rep.lines.push_back(std::to_string(rep.triples) + " (I, J, K) triples");
    rep.lines.push_back("free point: u_IJK - u_IKJ nonzero for " + std::to_string(rep.antisym_nonzero_generic) +
                        ", u_IJK + u_IKJ nonzero for " + std::to_string(rep.sym_nonzero_generic));
    rep.lines.push_back(std::to_string(points) + " points with d_2 d_3 = 0: u_IJK + u_IKJ nonzero in " +
                        std::to_string(rep.sym_nonzero_on_complex) + " evaluations");
    rep.ok = rep.antisym_nonzero_generic > 0 && rep.sym_nonzero_on_complex == 0;
    return rep;
}

}  // namespace resatlas
