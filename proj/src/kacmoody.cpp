#include "resatlas/kacmoody.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "resatlas/format.hpp"

namespace resatlas {

// ---------------------------------------------------------------- graph

TpqrGraph TpqrGraph::make(int p, int q, int r) {
    if (p < 2 || q < 1 || r < 2) throw std::invalid_argument("T_{p,q,r} needs p >= 2, q >= 1, r >= 2");
    TpqrGraph g;
    g.p = p, g.q = q, g.r = r;
    g.n = p + q + r - 2;
    g.adj.assign(g.n, {});
    auto link = [&](int a, int b) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
    };
    int prev = g.u();
    for (int i = 1; i < p; ++i) link(prev, g.x(i)), prev = g.x(i);
    prev = g.u();
    for (int j = 1; j < q; ++j) link(prev, g.y(j)), prev = g.y(j);
    prev = g.u();
    for (int k = 1; k < r; ++k) link(prev, g.z(k)), prev = g.z(k);
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

std::string TpqrGraph::vertex_name(int v) const {
    if (v == 0) return "u";
    if (v < p) return "x" + std::to_string(v);
    if (v < p + q - 1) return "y" + std::to_string(v - p + 1);
    if (v < n) return "z" + std::to_string(v - (p + q - 2));
    throw std::out_of_range("vertex index out of range");
}

int TpqrGraph::vertex_by_name(const std::string& name) const {
    for (int v = 0; v < n; ++v)
        if (vertex_name(v) == name) return v;
    return -1;
}

std::vector<int> TpqrGraph::S() const {
    std::vector<int> s;
    for (int v = 0; v < n; ++v)
        if (v != z1()) s.push_back(v);
    return s;
}

int TpqrGraph::arm_length(char arm) const {
    switch (arm) {
        case 'x': return p - 1;
        case 'y': return q - 1;
        case 'z': return r - 1;
        default: throw std::invalid_argument("arm must be x, y or z");
    }
}

int TpqrGraph::arm_vertex(char arm, int i) const {
    if (i < 1 || i > arm_length(arm)) throw std::out_of_range("arm position out of range");
    return arm == 'x' ? x(i) : arm == 'y' ? y(i) : z(i);
}

GCM cartan_matrix(const TpqrGraph& g) {
    GCM A(g.n, std::vector<int>(g.n, 0));
    for (int i = 0; i < g.n; ++i) {
        A[i][i] = 2;
        for (int j : g.adj[i]) A[i][j] = -1;
    }
    return A;
}

// ---------------------------------------------------------------- weights

Weight rho(int n) { return Weight(n, 1); }

Weight fundamental_weight(int n, int v) {
    Weight w(n, 0);
    w.at(v) = 1;
    return w;
}

Weight reflect(const GCM& A, const Weight& w, int i) {
    int n = static_cast<int>(A.size());
    if (i < 0 || i >= n) throw std::out_of_range("reflect: vertex out of range");
    Weight out = w;
    long long li = w[i];
    if (li == 0) return out;
    for (int j = 0; j < n; ++j)
        if (A[j][i]) out[j] -= li * A[j][i];
    return out;
}

RootVec reflect_root(const GCM& A, const RootVec& beta, int i) {
    long long c = 0;
    for (std::size_t j = 0; j < beta.size(); ++j) c += static_cast<long long>(A[i][j]) * beta[j];
    RootVec out = beta;
    out[i] -= static_cast<int>(c);
    return out;
}

Weight root_to_weight(const GCM& A, const RootVec& beta) {
    int n = static_cast<int>(A.size());
    Weight w(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[i] += static_cast<long long>(A[i][j]) * beta[j];
    return w;
}

long long pairing(const GCM& A, const RootVec& a, const RootVec& b) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) s += static_cast<long long>(a[i]) * A[i][j] * b[j];
    return s;
}

Weight apply_word(const GCM& A, const std::vector<int>& word, const Weight& w) {
    Weight out = w;
    for (auto it = word.rbegin(); it != word.rend(); ++it) out = reflect(A, out, *it);
    return out;
}

RootVec apply_word_root(const GCM& A, const std::vector<int>& word, const RootVec& beta) {
    RootVec out = beta;
    for (auto it = word.rbegin(); it != word.rend(); ++it) out = reflect_root(A, out, *it);
    return out;
}

Weight dot_action(const GCM& A, const std::vector<int>& word, const Weight& lambda) {
    Weight mu = lambda;
    for (auto& v : mu) v += 1;
    mu = apply_word(A, word, mu);
    for (auto& v : mu) v -= 1;
    return mu;
}

RootVec dot_shift(const GCM& A, const std::vector<int>& word, const Weight& lambda) {
    Weight mu = lambda;
    for (auto& v : mu) v += 1;
    RootVec gamma(A.size(), 0);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        gamma[*it] += static_cast<int>(mu[*it]);
        mu = reflect(A, mu, *it);
    }
    return gamma;
}

std::vector<RootVec> inversion_roots(const GCM& A, const std::vector<int>& word) {
    int n = static_cast<int>(A.size());
    std::vector<RootVec> out;
    for (std::size_t m = 0; m < word.size(); ++m) {
        RootVec a(n, 0);
        a[word[m]] = 1;
        std::vector<int> prefix(word.begin(), word.begin() + static_cast<long>(m));
        out.push_back(apply_word_root(A, prefix, a));
    }
    return out;
}

std::string weight_to_string(const TpqrGraph& g, const Weight& w) {
    std::string s = "{";
    bool first = true;
    for (int v = 0; v < g.n; ++v) {
        if (w[v] == 0) continue;
        s += (first ? "" : ", ") + g.vertex_name(v) + ":" + std::to_string(w[v]);
        first = false;
    }
    return s + "}";
}

// ---------------------------------------------------------------- series engine

namespace {

std::string pack(const RootVec& v) {
    std::string s(v.size(), '\0');
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0 || v[i] > 255) throw std::overflow_error("lattice coordinate outside 0..255");
        s[i] = static_cast<char>(v[i]);
    }
    return s;
}

int total_height(const RootVec& v) {
    int h = 0;
    for (int x : v) h += x;
    return h;
}

// A finite down-closed subset of the positive cone, points ordered by height.
class Domain {
public:
    int n = 0;
    std::vector<RootVec> points;
    std::unordered_map<std::string, int> index;

    int find(const RootVec& v) const {
        for (int x : v)
            if (x < 0 || x > 255) return -1;
        auto it = index.find(pack(v));
        return it == index.end() ? -1 : it->second;
    }
    bool contains(const RootVec& v) const { return find(v) >= 0; }
    int size() const { return static_cast<int>(points.size()); }

    void finalize() {
        std::stable_sort(points.begin(), points.end(), [](const RootVec& a, const RootVec& b) {
            int ha = total_height(a), hb = total_height(b);
            return ha != hb ? ha < hb : a < b;
        });
        index.clear();
        index.reserve(points.size() * 2);
        for (int i = 0; i < size(); ++i) index.emplace(pack(points[i]), i);
    }

    static Domain down_closure(int n, const std::vector<RootVec>& gens, const Budget& budget) {
        Domain d;
        d.n = n;
        std::unordered_set<std::string> seen;
        std::vector<RootVec> stack;
        auto push = [&](const RootVec& v) {
            if (seen.insert(pack(v)).second) {
                stack.push_back(v);
                if (seen.size() > budget.max_points) throw BudgetExceeded("truncation domain exceeds point budget");
            }
        };
        push(RootVec(n, 0));
        for (auto& g : gens) push(g);
        std::size_t step = 0;
        while (!stack.empty()) {
            RootVec v = stack.back();
            stack.pop_back();
            d.points.push_back(v);
            if (++step % 65536 == 0) budget.check("domain construction");
            for (int i = 0; i < n; ++i)
                if (v[i] > 0) {
                    --v[i];
                    push(v);
                    ++v[i];
                }
        }
        d.finalize();
        return d;
    }

    // All points below `caps` that satisfy a down-closed predicate.
    // max_total >= 0 prunes partial points whose coordinate sum already exceeds it.
    static Domain box(const RootVec& caps, const std::function<bool(const RootVec&)>& keep, const Budget& budget,
                      int max_total = -1) {
        Domain d;
        d.n = static_cast<int>(caps.size());
        RootVec cur(d.n, 0);
        int running = 0;
        std::function<void(int)> rec = [&](int i) {
            if (i == d.n) {
                if (keep(cur)) {
                    d.points.push_back(cur);
                    if (d.points.size() > budget.max_points) throw BudgetExceeded("truncation box exceeds point budget");
                }
                return;
            }
            for (int c = 0; c <= caps[i]; ++c) {
                if (max_total >= 0 && running + c > max_total) break;
                cur[i] = c;
                running += c;
                rec(i + 1);
                running -= c;
            }
            cur[i] = 0;
        };
        rec(0);
        d.finalize();
        return d;
    }

    std::vector<int> shift_map(const RootVec& beta) const {
        std::vector<int> out(points.size(), -1);
        RootVec t(n);
        for (int i = 0; i < size(); ++i) {
            bool ok = true;
            for (int j = 0; j < n; ++j) {
                t[j] = points[i][j] - beta[j];
                if (t[j] < 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) out[i] = find(t);
        }
        return out;
    }
};

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
    return r;
}

long long checked_sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
    return r;
}

// s <- s * (1 - x^beta)^m
void mul_one_minus(const Domain& d, std::vector<long long>& s, const RootVec& beta, long long m) {
    auto sm = d.shift_map(beta);
    for (long long rep = 0; rep < m; ++rep)
        for (int i = d.size() - 1; i >= 0; --i)
            if (sm[i] >= 0 && s[sm[i]]) s[i] = checked_sub(s[i], s[sm[i]]);
}

// s <- s / (1 - x^beta)^m
void div_one_minus(const Domain& d, std::vector<long long>& s, const RootVec& beta, long long m) {
    auto sm = d.shift_map(beta);
    for (long long rep = 0; rep < m; ++rep)
        for (int i = 0; i < d.size(); ++i)
            if (sm[i] >= 0 && s[sm[i]]) s[i] = checked_add(s[i], s[sm[i]]);
}

struct OrbitTerm {
    RootVec gamma;  // mu - w mu
    int sign;
};

// sum over w in the parabolic subgroup generated by `allowed` of
// eps(w) x^{mu - w mu}, for mu regular dominant on `allowed`, keeping only
// exponents accepted by the down-closed predicate.
std::vector<OrbitTerm> alternating_orbit(const GCM& A, const Weight& mu, const std::vector<char>& allowed,
                                         const std::function<bool(const RootVec&)>& keep, const Budget& budget) {
    int n = static_cast<int>(A.size());
    for (int j = 0; j < n; ++j)
        if (allowed[j] && mu[j] <= 0) throw std::invalid_argument("alternating_orbit: weight not regular dominant");
    std::vector<OrbitTerm> out;
    std::set<Weight> seen;
    std::vector<std::pair<Weight, RootVec>> frontier{{mu, RootVec(n, 0)}};
    seen.insert(mu);
    int sign = 1;
    while (!frontier.empty()) {
        budget.check("Weyl orbit enumeration");
        std::vector<std::pair<Weight, RootVec>> next;
        for (auto& [w, g] : frontier) {
            out.push_back({g, sign});
            for (int j = 0; j < n; ++j) {
                if (!allowed[j] || w[j] <= 0) continue;
                RootVec g2 = g;
                g2[j] += static_cast<int>(w[j]);
                if (!keep(g2)) continue;
                Weight w2 = reflect(A, w, j);
                if (seen.insert(w2).second) next.emplace_back(std::move(w2), std::move(g2));
            }
        }
        if (seen.size() > budget.max_points) throw BudgetExceeded("Weyl orbit exceeds point budget");
        frontier = std::move(next);
        sign = -sign;
    }
    return out;
}

std::vector<char> all_allowed(int n) { return std::vector<char>(n, 1); }

}  // namespace

// ---------------------------------------------------------------- roots

long long RootSystem::count_with_mult() const {
    long long s = 0;
    for (auto& r : positive) s += r.mult;
    return s;
}

std::optional<long long> RootSystem::mult_of(const RootVec& k) const {
    for (auto& r : positive)
        if (r.k == k) return r.mult;
    return std::nullopt;
}

RootSystem enumerate_roots(const GCM& A, int H, const Budget& budget, int level_vertex, int level_cap) {
    if (H < 1) throw std::invalid_argument("enumerate_roots: height cap must be >= 1");
    int n = static_cast<int>(A.size());
    auto within_level = [&](const RootVec& v) { return level_vertex < 0 || v[level_vertex] <= level_cap; };

    // Candidates: vectors reachable from simple roots by adding simple roots
    // while keeping (beta|beta) <= 2 and connected support. Every positive
    // root is reached this way, since each root of height >= 2 is a root plus
    // a simple root.
    std::vector<std::vector<std::pair<RootVec, long long>>> cand(2);
    std::unordered_set<std::string> seen;
    for (int i = 0; i < n; ++i) {
        RootVec e(n, 0);
        e[i] = 1;
        if (!within_level(e)) continue;
        seen.insert(pack(e));
        cand[1].emplace_back(e, 2);
    }
    int h = 1;
    for (; h <= H && !cand[h].empty(); ++h) {
        budget.check("root candidate search");
        cand.emplace_back();
        for (auto& [g, norm] : cand[h]) {
            for (int j = 0; j < n; ++j) {
                bool touches = g[j] > 0;
                for (int i = 0; i < n && !touches; ++i)
                    if (g[i] > 0 && A[i][j] != 0) touches = true;
                if (!touches) continue;
                long long gj = 0;
                for (int i = 0; i < n; ++i) gj += static_cast<long long>(g[i]) * A[i][j];
                long long norm2 = norm + 2 * gj + 2;
                if (norm2 > 2) continue;
                RootVec g2 = g;
                ++g2[j];
                if (!within_level(g2)) continue;
                if (seen.insert(pack(g2)).second) cand[h + 1].emplace_back(std::move(g2), norm2);
            }
        }
        if (seen.size() > budget.max_points) throw BudgetExceeded("root candidate set exceeds point budget");
    }
    int top = std::min(h - 1, H);  // last height with candidates considered
    RootSystem rs;
    rs.n = n;
    rs.max_height = H;
    rs.level_vertex = level_vertex;
    rs.level_cap = level_cap;
    rs.complete = static_cast<int>(cand.size()) <= H + 1 || cand[H + 1].empty();

    std::vector<RootVec> gens;
    for (int t = 1; t <= top; ++t)
        for (auto& c : cand[t]) gens.push_back(c.first);
    Domain dom = Domain::down_closure(n, gens, budget);

    std::vector<long long> lhs(dom.size(), 0);
    for (auto& term : alternating_orbit(A, rho(n), all_allowed(n), [&](const RootVec& v) { return dom.contains(v); }, budget))
        lhs[dom.find(term.gamma)] += term.sign;

    std::vector<long long> prod(dom.size(), 0);
    prod[dom.find(RootVec(n, 0))] = 1;
    for (int t = 1; t <= top; ++t) {
        budget.check("denominator recursion");
        std::vector<Root> found;
        for (auto& c : cand[t]) {
            int idx = dom.find(c.first);
            long long m = checked_sub(prod[idx], lhs[idx]);
            if (m < 0) throw std::logic_error("enumerate_roots: negative multiplicity from the denominator recursion");
            if (m > 0) found.push_back({c.first, m, t});
        }
        for (auto& root : found) mul_one_minus(dom, prod, root.k, root.mult);
        std::sort(found.begin(), found.end(), [](const Root& a, const Root& b) { return a.k < b.k; });
        for (auto& root : found) rs.positive.push_back(root);
    }
    return rs;
}

bool denominator_identity_holds(const GCM& A, const RootSystem& roots, int H, std::string* detail) {
    int n = static_cast<int>(A.size());
    Budget unlimited;
    RootVec caps(n, H);
    auto keep = [&](const RootVec& v) { return total_height(v) <= H; };
    Domain dom = Domain::box(caps, keep, unlimited, H);
    std::vector<long long> prod(dom.size(), 0);
    prod[dom.find(RootVec(n, 0))] = 1;
    for (auto& r : roots.positive)
        if (r.height <= H) mul_one_minus(dom, prod, r.k, r.mult);
    std::vector<long long> lhs(dom.size(), 0);
    for (auto& term : alternating_orbit(A, rho(n), all_allowed(n), keep, unlimited)) lhs[dom.find(term.gamma)] += term.sign;
    for (int i = 0; i < dom.size(); ++i)
        if (lhs[i] != prod[i]) {
            if (detail) {
                *detail = "mismatch at [";
                for (int j = 0; j < n; ++j) *detail += (j ? "," : "") + std::to_string(dom.points[i][j]);
                *detail += "]: alternating sum " + std::to_string(lhs[i]) + ", product " + std::to_string(prod[i]);
            }
            return false;
        }
    if (detail) *detail = "checked " + std::to_string(dom.size()) + " lattice points";
    return true;
}

// ---------------------------------------------------------------- Weyl cosets

namespace {
bool in_levi(const RootVec& a, const std::vector<char>& inS) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && !inS[i]) return false;
    return true;
}

bool is_positive(const RootVec& a) {
    bool nz = false;
    for (int x : a) {
        if (x < 0) return false;
        if (x) nz = true;
    }
    return nz;
}

bool inversions_outside_levi(const GCM& A, const std::vector<int>& word, const std::vector<char>& inS) {
    auto inv = inversion_roots(A, word);
    std::set<RootVec> distinct(inv.begin(), inv.end());
    if (distinct.size() != inv.size()) return false;
    for (auto& a : inv)
        if (!is_positive(a) || in_levi(a, inS)) return false;
    return true;
}
}  // namespace

WSEnumeration enumerate_WS(const GCM& A, const std::vector<int>& S, int L, const Budget& budget,
                           std::size_t cross_check_limit) {
    int n = static_cast<int>(A.size());
    if (L < 0) throw std::invalid_argument("enumerate_WS: negative length");
    std::vector<char> inS(n, 0);
    for (int s : S) {
        if (s < 0 || s >= n) throw std::out_of_range("enumerate_WS: vertex out of range");
        inS[s] = 1;
    }
    if (static_cast<int>(S.size()) >= n) throw std::invalid_argument("enumerate_WS: S must be a proper subset");

    WSEnumeration out;
    Weight r = rho(n);
    out.by_length.push_back({WeylElem{{}, r}});
    std::set<Weight> seen{r};
    // W(S) is closed under dropping the last letter of a reduced word, so
    // it grows by appending letters on the right.
    for (int k = 0; k < L; ++k) {
        budget.check("W(S) enumeration");
        std::vector<WeylElem> next;
        for (auto& w : out.by_length[k])
            for (int j = 0; j < n; ++j) {
                Weight key = apply_word(A, w.word, reflect(A, r, j));
                bool member = true;
                for (int i = 0; i < n && member; ++i)
                    if (inS[i] && key[i] <= 0) member = false;
                if (!member || !seen.insert(key).second) continue;
                auto word = w.word;
                word.push_back(j);
                next.push_back({std::move(word), std::move(key)});
            }
        if (seen.size() > budget.max_points) throw BudgetExceeded("W(S) enumeration exceeds point budget");
        std::sort(next.begin(), next.end(), [](const WeylElem& a, const WeylElem& b) { return a.word < b.word; });
        out.by_length.push_back(std::move(next));
        if (out.by_length.back().empty()) break;
    }
    while (static_cast<int>(out.by_length.size()) < L + 1) out.by_length.emplace_back();

    for (auto& level : out.by_length)
        for (auto& w : level)
            if (!inversions_outside_levi(A, w.word, inS))
                throw std::logic_error("enumerate_WS: element fails the inversion-set definition");

    // Full ball of W up to length L: filter by the inversion-set definition
    // and by the coset test w(alpha_i) > 0, then compare.
    std::vector<WeylElem> ball{{{}, r}};
    std::set<Weight> ball_seen{r};
    std::vector<WeylElem> frontier = ball;
    bool too_big = false;
    for (int k = 0; k < L && !frontier.empty() && !too_big; ++k) {
        std::vector<WeylElem> next;
        for (auto& w : frontier)
            for (int j = 0; j < n; ++j) {
                if (w.key[j] <= 0) continue;
                Weight key = reflect(A, w.key, j);
                if (!ball_seen.insert(key).second) continue;
                std::vector<int> word{j};
                word.insert(word.end(), w.word.begin(), w.word.end());
                next.push_back({std::move(word), std::move(key)});
            }
        if (ball_seen.size() > cross_check_limit) too_big = true;
        ball.insert(ball.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    if (!too_big) {
        std::set<Weight> by_definition, by_coset_test, enumerated;
        for (auto& level : out.by_length)
            for (auto& w : level) enumerated.insert(w.key);
        for (auto& w : ball) {
            if (inversions_outside_levi(A, w.word, inS)) by_definition.insert(w.key);
            bool min_rep = true;
            for (int i = 0; i < n && min_rep; ++i) {
                if (!inS[i]) continue;
                RootVec a(n, 0);
                a[i] = 1;
                if (!is_positive(apply_word_root(A, w.word, a))) min_rep = false;
            }
            if (min_rep) {
                std::vector<int> inv(w.word.rbegin(), w.word.rend());
                by_coset_test.insert(apply_word(A, inv, r));
            }
        }
        if (by_definition != enumerated || by_coset_test != enumerated)
            throw std::logic_error("enumerate_WS: enumeration disagrees with the defining conditions");
        out.cross_checked = true;
    }
    return out;
}

std::vector<Weight> kostant_weights(const GCM& A, const std::vector<int>& S, int k, int L, const Budget& budget) {
    if (k < 0 || k > L) throw std::invalid_argument("kostant_weights: need 0 <= k <= L");
    auto ws = enumerate_WS(A, S, L, budget);
    int n = static_cast<int>(A.size());
    std::vector<Weight> out;
    for (auto& w : ws.by_length[k]) {
        Weight v = w.key;
        for (auto& x : v) x -= 1;
        for (int s : S)
            if (v[s] < 0) throw std::logic_error("kostant_weights: weight not dominant on S");
        out.push_back(v);
    }
    (void)n;
    return out;
}

// ---------------------------------------------------------------- defect algebra

DefectDims defect_graded_dims(int p, int q, int r, int m_max, const Budget& budget) {
    if (m_max < 1) throw std::invalid_argument("defect_graded_dims: m_max must be >= 1");
    auto g = TpqrGraph::make(p, q, r);
    auto A = cartan_matrix(g);
    auto cls = classify(p, q, r);
    DefectDims out;
    out.finite_class = cls.kind == TpqrKind::Finite;
    const int unbounded = 1 << 20;
    RootSystem rs = out.finite_class ? enumerate_roots(A, unbounded, budget)
                                     : enumerate_roots(A, unbounded, budget, g.z1(), m_max);
    if (!rs.complete) throw std::logic_error("defect_graded_dims: enumeration did not close");
    std::map<int, long long> by_level;
    for (auto& root : rs.positive) {
        int lvl = root.k[g.z1()];
        if (lvl > 0) by_level[lvl] += root.mult;
    }
    out.dims.assign(m_max, 0);
    long long total = 0;
    for (auto& [lvl, d] : by_level) {
        if (lvl <= m_max) out.dims[lvl - 1] = d;
        total += d;
        if (d) out.top_level = std::max(out.top_level, lvl);
    }
    if (out.finite_class) out.total = total;
    return out;
}

std::optional<RootVec> real_root_at_level(const GCM& A, int vertex, int level, std::size_t limit) {
    int n = static_cast<int>(A.size());
    using Item = std::pair<std::pair<int, int>, RootVec>;  // (level, -height), root
    std::priority_queue<Item> pq;
    std::set<RootVec> seen;
    for (int i = 0; i < n; ++i) {
        RootVec e(n, 0);
        e[i] = 1;
        seen.insert(e);
        pq.push({{e[vertex], -1}, e});
    }
    while (!pq.empty() && seen.size() < limit) {
        RootVec b = pq.top().second;
        pq.pop();
        if (b[vertex] == level) return b;
        for (int j = 0; j < n; ++j) {
            RootVec c = reflect_root(A, b, j);
            if (c[j] <= b[j] || c[vertex] > level) continue;
            if (seen.insert(c).second) pq.push({{c[vertex], -total_height(c)}, c});
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- characters

namespace {

struct FiniteData {
    RootSystem roots;
    RootVec theta;  // highest root
};

FiniteData finite_data(const GCM& A) {
    FiniteData fd;
    fd.roots = enumerate_roots(A, 1 << 20);
    if (!fd.roots.complete) throw std::invalid_argument("matrix is not of finite type");
    fd.theta = fd.roots.positive.back().k;
    for (auto& r : fd.roots.positive)
        if (r.height > total_height(fd.theta)) fd.theta = r.k;
    return fd;
}

// lambda minus its lowest weight under the subgroup generated by `allowed`.
RootVec lowest_shift(const GCM& A, const Weight& lambda, const std::vector<char>& allowed) {
    int n = static_cast<int>(A.size());
    Weight w = lambda;
    RootVec g(n, 0);
    bool moved = true;
    while (moved) {
        moved = false;
        for (int j = 0; j < n; ++j)
            if (allowed[j] && w[j] > 0) {
                g[j] += static_cast<int>(w[j]);
                w = reflect(A, w, j);
                moved = true;
            }
    }
    return g;
}

void raise_caps(RootVec& caps, const RootVec& v) {
    for (std::size_t i = 0; i < caps.size(); ++i) caps[i] = std::max(caps[i], v[i]);
}

// Adds eps(v) x^{shift + (mu+rho) - v(mu+rho)} for v in W_allowed.
void add_numerator(const GCM& A, const Domain& dom, std::vector<long long>& s, const Weight& mu, const RootVec& shift,
                   const std::vector<char>& allowed, int sign) {
    int n = static_cast<int>(A.size());
    Weight mr = mu;
    for (auto& v : mr) v += 1;
    auto keep = [&](const RootVec& g) {
        RootVec t(n);
        for (int i = 0; i < n; ++i) t[i] = g[i] + shift[i];
        return dom.contains(t);
    };
    RootVec zero(n, 0);
    if (!keep(zero)) return;
    for (auto& term : alternating_orbit(A, mr, allowed, keep, Budget{})) {
        RootVec t(n);
        for (int i = 0; i < n; ++i) t[i] = term.gamma[i] + shift[i];
        int idx = dom.find(t);
        s[idx] += sign * term.sign;
    }
}

void divide_by_roots(const Domain& dom, std::vector<long long>& s, const RootSystem& roots,
                     const std::function<bool(const RootVec&)>& which) {
    for (auto& r : roots.positive)
        if (which(r.k)) div_one_minus(dom, s, r.k, r.mult);
}

GradedDims grade(const Domain& dom, const std::vector<long long>& s, int vertex, int cutoff, int offset = 0) {
    GradedDims gd;
    gd.levels.assign(cutoff + 1, 0);
    gd.total = 0;
    for (int i = 0; i < dom.size(); ++i) {
        if (!s[i]) continue;
        gd.total += static_cast<long>(s[i]);
        int lvl = dom.points[i][vertex] - offset;
        if (lvl >= 0 && lvl <= cutoff) gd.levels[lvl] += static_cast<long>(s[i]);
    }
    return gd;
}

void require_dominant(const Weight& lambda, const std::vector<char>& on) {
    for (std::size_t i = 0; i < lambda.size(); ++i)
        if (on[i] && lambda[i] < 0) throw std::invalid_argument("weight is not dominant on the required vertices");
}

}  // namespace

LatticeSeries weyl_kac_series(const GCM& A, const Weight& lambda) {
    int n = static_cast<int>(A.size());
    require_dominant(lambda, all_allowed(n));
    auto fd = finite_data(A);
    RootVec caps = lowest_shift(A, lambda, all_allowed(n));
    Domain dom = Domain::box(caps, [](const RootVec&) { return true; }, Budget{});
    std::vector<long long> s(dom.size(), 0);
    add_numerator(A, dom, s, lambda, RootVec(n, 0), all_allowed(n), 1);
    divide_by_roots(dom, s, fd.roots, [](const RootVec&) { return true; });
    LatticeSeries out;
    for (int i = 0; i < dom.size(); ++i)
        if (s[i]) out[dom.points[i]] = s[i];
    return out;
}

GradedDims weyl_kac_character(const GCM& A, const Weight& lambda, int grade_vertex, int cutoff) {
    int n = static_cast<int>(A.size());
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
    GradedDims gd;
    gd.levels.assign(cutoff + 1, 0);
    gd.total = 0;
    for (auto& [g, c] : weyl_kac_series(A, lambda)) {
        gd.total += static_cast<long>(c);
        if (grade_vertex >= 0 && grade_vertex < n && g[grade_vertex] <= cutoff) gd.levels[g[grade_vertex]] += static_cast<long>(c);
    }
    return gd;
}

std::map<Weight, long long> weight_multiset(const GCM& A, const Weight& lambda) {
    std::map<Weight, long long> out;
    for (auto& [g, c] : weyl_kac_series(A, lambda)) {
        Weight w = lambda;
        Weight d = root_to_weight(A, g);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= d[i];
        out[w] += c;
    }
    return out;
}

BigRat weyl_dimension(const GCM& A, const Weight& lambda) {
    auto fd = finite_data(A);
    BigRat d = 1;
    for (auto& r : fd.roots.positive) {
        long long num = 0, den = 0;
        for (std::size_t i = 0; i < r.k.size(); ++i) {
            num += (lambda[i] + 1) * r.k[i];
            den += r.k[i];
        }
        d *= BigRat(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
    }
    d.canonicalize();
    return d;
}

GradedDims parabolic_verma_character(const GCM& A, int grade_vertex, const Weight& mu, int cutoff) {
    int n = static_cast<int>(A.size());
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
    std::vector<char> inS(n, 1);
    inS.at(grade_vertex) = 0;
    require_dominant(mu, inS);
    auto fd = finite_data(A);
    RootVec caps = lowest_shift(A, mu, inS);
    for (int i = 0; i < n; ++i) caps[i] += cutoff * fd.theta[i];
    Domain dom = Domain::box(caps, [&](const RootVec& v) { return v[grade_vertex] <= cutoff; }, Budget{});
    std::vector<long long> s(dom.size(), 0);
    add_numerator(A, dom, s, mu, RootVec(n, 0), inS, 1);
    divide_by_roots(dom, s, fd.roots, [](const RootVec&) { return true; });
    return grade(dom, s, grade_vertex, cutoff);
}

// ---------------------------------------------------------------- BGG

BGGLayers bgg_initial_terms(const TpqrGraph& g, const Weight& lambda) {
    auto A = cartan_matrix(g);
    for (auto v : lambda)
        if (v < 0) throw std::invalid_argument("bgg_initial_terms: lambda must be dominant");
    if (static_cast<int>(lambda.size()) != g.n) throw std::invalid_argument("bgg_initial_terms: weight size mismatch");
    BGGLayers out;
    int u = g.u(), z1 = g.z1();
    out.words = {{{}}, {{z1}}, {{z1, u}}};
    if (g.r >= 3) out.words[2].push_back({z1, g.z(2)});
    for (auto& layer : out.words) {
        out.layers.emplace_back();
        for (auto& w : layer) out.layers.back().push_back(dot_action(A, w, lambda));
    }

    auto L = [&](int v) { return lambda[v]; };
    bool ok = true;
    auto expect = [&](const Weight& got, std::map<int, long long> changed, const char* tag) {
        for (int v = 0; v < g.n; ++v) {
            long long want = changed.count(v) ? changed[v] : lambda[v];
            if (got[v] != want) {
                ok = false;
                out.notes.push_back(std::string(tag) + ": entry at " + g.vertex_name(v) + " is " + std::to_string(got[v]) +
                                    ", closed form gives " + std::to_string(want));
            }
        }
    };
    {
        std::map<int, long long> c{{u, L(u) + L(z1) + 1}, {z1, -L(z1) - 2}};
        if (g.r >= 3) c[g.z(2)] = L(g.z(2)) + L(z1) + 1;
        expect(out.layers[1][0], c, "s_z1");
    }
    {
        std::map<int, long long> c{{u, L(z1)}, {g.x(1), L(g.x(1)) + L(u) + 1}, {z1, -L(z1) - L(u) - 3}};
        if (g.q >= 2) c[g.y(1)] = L(g.y(1)) + L(u) + 1;
        if (g.r >= 3) c[g.z(2)] = L(g.z(2)) + L(z1) + L(u) + 2;
        expect(out.layers[2][0], c, "s_z1 s_u");
    }
    if (g.r >= 3) {
        std::map<int, long long> c{{u, L(u) + L(z1) + L(g.z(2)) + 2}, {z1, -L(z1) - L(g.z(2)) - 3}, {g.z(2), L(z1)}};
        if (g.r >= 4) c[g.z(3)] = L(g.z(3)) + L(g.z(2)) + 1;
        expect(out.layers[2][1], c, "s_z1 s_z2");
    }
    out.closed_forms_ok = ok;
    return out;
}

EulerCheck bgg_euler_check(const TpqrGraph& g, const Weight& lambda, int cutoff, long long perturb_u) {
    auto A = cartan_matrix(g);
    int n = g.n, v = g.z1();
    require_dominant(lambda, all_allowed(n));
    std::vector<char> inS(n, 1);
    inS[v] = 0;
    auto fd = finite_data(A);
    int max_len = static_cast<int>(fd.roots.positive.size());
    auto ws = enumerate_WS(A, g.S(), max_len);

    struct Term {
        Weight mu;
        RootVec shift;
        int sign;
    };
    std::vector<Term> terms;
    bool perturbed = false;
    RootVec caps = lowest_shift(A, lambda, all_allowed(n));
    for (int len = 0; len <= max_len; ++len)
        for (auto& w : ws.by_length[len]) {
            RootVec shift = dot_shift(A, w.word, lambda);
            if (shift[v] > cutoff) continue;
            Weight mu = dot_action(A, w.word, lambda);
            if (len == 2 && perturb_u != 0 && !perturbed) {
                mu[g.u()] += perturb_u;
                perturbed = true;
            }
            RootVec c = lowest_shift(A, mu, inS);
            for (int i = 0; i < n; ++i) c[i] += shift[i] + cutoff * fd.theta[i];
            raise_caps(caps, c);
            terms.push_back({mu, shift, len % 2 ? -1 : 1});
        }
    Domain dom = Domain::box(caps, [&](const RootVec& x) { return x[v] <= cutoff; }, Budget{});

    std::vector<long long> lhs(dom.size(), 0);
    for (auto& t : terms) {
        std::vector<long long> piece(dom.size(), 0);
        add_numerator(A, dom, piece, t.mu, t.shift, inS, 1);
        divide_by_roots(dom, piece, fd.roots, [](const RootVec&) { return true; });
        for (int i = 0; i < dom.size(); ++i) lhs[i] += t.sign * piece[i];
    }
    std::vector<long long> rhs(dom.size(), 0);
    add_numerator(A, dom, rhs, lambda, RootVec(n, 0), all_allowed(n), 1);
    divide_by_roots(dom, rhs, fd.roots, [](const RootVec&) { return true; });

    EulerCheck ec;
    ec.ok = true;
    for (int i = 0; i < dom.size(); ++i)
        if (lhs[i] != rhs[i]) {
            int lvl = dom.points[i][v];
            if (ec.ok || lvl < ec.first_bad_level) ec.first_bad_level = lvl;
            ec.ok = false;
        }
    auto gl = grade(dom, lhs, v, cutoff), gr = grade(dom, rhs, v, cutoff);
    ec.detail = "levels";
    for (int m = 0; m <= cutoff; ++m) ec.detail += " " + gl.levels[m].get_str() + "/" + gr.levels[m].get_str();
    ec.detail += " (alternating sum / character), " + std::to_string(terms.size()) + " Verma terms";
    return ec;
}

bool kostant_euler_identity(const TpqrGraph& g, int cutoff, std::string* detail) {
    auto A = cartan_matrix(g);
    int n = g.n, v = g.z1();
    std::vector<char> inS(n, 1);
    inS[v] = 0;
    auto fd = finite_data(A);
    int max_len = static_cast<int>(fd.roots.positive.size());
    auto ws = enumerate_WS(A, g.S(), max_len);
    Weight zero(n, 0);

    RootVec caps(n, 0);
    for (int i = 0; i < n; ++i) caps[i] = cutoff * fd.theta[i];
    struct Term {
        Weight mu;
        RootVec shift;
        int sign;
    };
    std::vector<Term> terms;
    for (int len = 0; len <= max_len; ++len)
        for (auto& w : ws.by_length[len]) {
            RootVec shift = dot_shift(A, w.word, zero);
            if (shift[v] > cutoff) continue;
            Weight mu = dot_action(A, w.word, zero);
            RootVec c = lowest_shift(A, mu, inS);
            for (int i = 0; i < n; ++i) c[i] += shift[i];
            raise_caps(caps, c);
            terms.push_back({mu, shift, len % 2 ? -1 : 1});
        }
    Domain dom = Domain::box(caps, [&](const RootVec& x) { return x[v] <= cutoff; }, Budget{});

    std::vector<long long> lhs(dom.size(), 0);
    lhs[dom.find(RootVec(n, 0))] = 1;
    for (auto& r : fd.roots.positive)
        if (r.k[v] > 0) mul_one_minus(dom, lhs, r.k, r.mult);

    std::vector<long long> rhs(dom.size(), 0);
    for (auto& t : terms) {
        std::vector<long long> piece(dom.size(), 0);
        add_numerator(A, dom, piece, t.mu, t.shift, inS, 1);
        divide_by_roots(dom, piece, fd.roots, [&](const RootVec& k) { return k[v] == 0; });
        for (int i = 0; i < dom.size(); ++i) rhs[i] += t.sign * piece[i];
    }
    for (int i = 0; i < dom.size(); ++i)
        if (lhs[i] != rhs[i]) {
            if (detail) *detail = "mismatch at level " + std::to_string(dom.points[i][v]);
            return false;
        }
    if (detail) *detail = std::to_string(terms.size()) + " Kostant terms, " + std::to_string(dom.size()) + " points";
    return true;
}

bool fundamental_in_exterior_check(const TpqrGraph& g, char arm, int i) {
    int len = g.arm_length(arm);
    if (i < 1 || i > len) throw std::out_of_range("fundamental_in_exterior_check: i outside 1..arm length");
    auto A = cartan_matrix(g);
    // arm vertices counted from the far end: position len is the leaf
    int leaf = g.arm_vertex(arm, len);
    int target = g.arm_vertex(arm, len + 1 - i);
    auto base = weight_multiset(A, fundamental_weight(g.n, leaf));
    auto want = weight_multiset(A, fundamental_weight(g.n, target));

    // exterior power via the generating function prod (1 + t e^w)
    std::vector<std::map<Weight, long long>> ext(i + 1);
    ext[0][Weight(g.n, 0)] = 1;
    for (auto& [w, mult] : base)
        for (long long c = 0; c < mult; ++c)
            for (int d = i; d >= 1; --d)
                for (auto& [w0, m0] : ext[d - 1]) {
                    Weight s = w0;
                    for (int k = 0; k < g.n; ++k) s[k] += w[k];
                    ext[d][s] += m0;
                }
    for (auto& [w, m] : want) {
        auto it = ext[i].find(w);
        if (it == ext[i].end() || it->second < m) return false;
    }
    return true;
}

}  // namespace resatlas
