#include "resatlas/exact.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <unordered_map>

namespace resatlas {

std::string to_string(const BigInt& v) { return v.get_str(); }
std::string to_string(const BigRat& v) { return v.get_str(); }

// ---------------------------------------------------------------- registry

namespace {
struct RegistryState {
    std::mutex mu;
    std::map<std::string, int> ids;
    std::vector<std::string> names;
};
RegistryState& registry() {
    static RegistryState state;
    return state;
}
}  // namespace

int VarRegistry::id(const std::string& name) {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    auto it = r.ids.find(name);
    if (it != r.ids.end()) return it->second;
    int id = static_cast<int>(r.names.size());
    r.ids.emplace(name, id);
    r.names.push_back(name);
    return id;
}

const std::string& VarRegistry::name(int id) {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    if (id < 0 || id >= static_cast<int>(r.names.size())) throw std::out_of_range("unknown variable id");
    return r.names[id];
}

int VarRegistry::size() {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    return static_cast<int>(r.names.size());
}

// ---------------------------------------------------------------- monomials

int grlex_compare(const Monomial& a, const Monomial& b) {
    if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
    std::size_t n = std::max(a.exps.size(), b.exps.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto x = a.exp(static_cast<int>(i)), y = b.exp(static_cast<int>(i));
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto e : m.exps) h = (h ^ e) * 0x100000001b3ULL + (h >> 29);
    return h;
}

namespace {
Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.exps.resize(std::max(a.exps.size(), b.exps.size()), 0);
    for (std::size_t i = 0; i < a.exps.size(); ++i) m.exps[i] += a.exps[i];
    for (std::size_t i = 0; i < b.exps.size(); ++i) m.exps[i] += b.exps[i];
    m.degree = a.degree + b.degree;
    return m;
}

bool term_greater(const MPoly::Term& a, const MPoly::Term& b) { return grlex_compare(a.first, b.first) > 0; }
}  // namespace

// ---------------------------------------------------------------- polynomials

MPoly::MPoly(long c) : MPoly(BigInt(c)) {}

MPoly::MPoly(const BigInt& c) {
    if (c != 0) terms_.emplace_back(Monomial{}, c);
}

MPoly MPoly::var(const std::string& name) { return var(VarRegistry::id(name)); }

MPoly MPoly::var(int id) {
    Monomial m;
    m.exps.assign(id + 1, 0);
    m.exps[id] = 1;
    m.degree = 1;
    MPoly p;
    p.terms_.emplace_back(std::move(m), BigInt(1));
    return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
    std::unordered_map<Monomial, BigInt, MonomialHash> acc;
    for (auto& [m, c] : terms) {
        Monomial t = m;
        while (!t.exps.empty() && t.exps.back() == 0) t.exps.pop_back();
        t.degree = 0;
        for (auto e : t.exps) t.degree += e;
        acc[t] += c;
    }
    MPoly p;
    for (auto& [m, c] : acc)
        if (c != 0) p.terms_.emplace_back(m, c);
    std::sort(p.terms_.begin(), p.terms_.end(), term_greater);
    return p;
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.degree == 0); }

BigInt MPoly::constant_term() const {
    if (!terms_.empty() && terms_.back().first.degree == 0) return terms_.back().second;
    return 0;
}

std::uint32_t MPoly::total_degree() const { return terms_.empty() ? 0 : terms_.front().first.degree; }

std::vector<int> MPoly::variables() const {
    std::vector<char> seen;
    for (auto& [m, c] : terms_) {
        if (seen.size() < m.exps.size()) seen.resize(m.exps.size(), 0);
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            if (m.exps[i]) seen[i] = 1;
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.push_back(static_cast<int>(i));
    return out;
}

int MPoly::single_variable() const {
    if (terms_.size() != 1 || terms_[0].first.degree != 1) return -1;
    if (abs(terms_[0].second) != 1) return -1;
    return static_cast<int>(terms_[0].first.exps.size()) - 1;
}

MPoly MPoly::operator-() const {
    MPoly p = *this;
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
}

namespace {
std::vector<MPoly::Term> merge_terms(const std::vector<MPoly::Term>& a, const std::vector<MPoly::Term>& b, int sign) {
    std::vector<MPoly::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int cmp;
        if (i == a.size()) cmp = -1;
        else if (j == b.size()) cmp = 1;
        else cmp = grlex_compare(a[i].first, b[j].first);
        if (cmp > 0) {
            out.push_back(a[i++]);
        } else if (cmp < 0) {
            out.emplace_back(b[j].first, sign > 0 ? b[j].second : BigInt(-b[j].second));
            ++j;
        } else {
            BigInt c = sign > 0 ? BigInt(a[i].second + b[j].second) : BigInt(a[i].second - b[j].second);
            if (c != 0) out.emplace_back(a[i].first, c);
            ++i, ++j;
        }
    }
    return out;
}
}  // namespace

MPoly& MPoly::operator+=(const MPoly& o) {
    terms_ = merge_terms(terms_, o.terms_, +1);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    terms_ = merge_terms(terms_, o.terms_, -1);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly p;
    if (a.is_zero() || b.is_zero()) return p;
    if (a.terms_.size() == 1 || b.terms_.size() == 1) {
        // multiplying by a single term preserves the order
        const MPoly& single = a.terms_.size() == 1 ? a : b;
        const MPoly& other = a.terms_.size() == 1 ? b : a;
        const auto& [m, c] = single.terms_[0];
        p.terms_.reserve(other.terms_.size());
        for (auto& [m2, c2] : other.terms_) p.terms_.emplace_back(mono_mul(m, m2), c * c2);
        return p;
    }
    std::unordered_map<Monomial, BigInt, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (auto& [m1, c1] : a.terms_)
        for (auto& [m2, c2] : b.terms_) {
            auto& slot = acc[mono_mul(m1, m2)];
            mpz_addmul(slot.get_mpz_t(), c1.get_mpz_t(), c2.get_mpz_t());
        }
    for (auto& [m, c] : acc)
        if (c != 0) p.terms_.emplace_back(m, c);
    std::sort(p.terms_.begin(), p.terms_.end(), term_greater);
    return p;
}

MPoly& MPoly::operator*=(const MPoly& o) {
    *this = *this * o;
    return *this;
}

bool MPoly::operator==(const MPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].first == o.terms_[i].first) || terms_[i].second != o.terms_[i].second) return false;
    return true;
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [m, c] : terms_) {
        BigInt mag = abs(c);
        if (first) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (!m.exps[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += VarRegistry::name(static_cast<int>(i));
            if (m.exps[i] > 1) mono += "^" + std::to_string(m.exps[i]);
        }
        if (mono.empty()) s += mag.get_str();
        else if (mag == 1) s += mono;
        else s += mag.get_str() + "*" + mono;
    }
    return s;
}

BigRat substitute(const MPoly& f, const Assignment& point) {
    BigRat total = 0;
    for (auto& [m, c] : f.terms()) {
        BigRat t = c;
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (!m.exps[i]) continue;
            auto it = point.find(static_cast<int>(i));
            if (it == point.end())
                throw std::invalid_argument("substitute: no value for variable " + VarRegistry::name(static_cast<int>(i)));
            BigRat pw;
            mpz_pow_ui(pw.get_num_mpz_t(), it->second.get_num_mpz_t(), m.exps[i]);
            mpz_pow_ui(pw.get_den_mpz_t(), it->second.get_den_mpz_t(), m.exps[i]);
            pw.canonicalize();
            t *= pw;
        }
        total += t;
    }
    return total;
}

MPoly substitute_partial(const MPoly& f, const Assignment& point) {
    // Only integral values can stay inside Z[X]; rational values are rejected.
    std::vector<MPoly::Term> out;
    for (auto& [m, c] : f.terms()) {
        BigInt coef = c;
        Monomial rest = m;
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (!m.exps[i]) continue;
            auto it = point.find(static_cast<int>(i));
            if (it == point.end()) continue;
            if (it->second.get_den() != 1) throw std::invalid_argument("substitute_partial: non-integral value");
            BigInt pw;
            mpz_pow_ui(pw.get_mpz_t(), it->second.get_num_mpz_t(), m.exps[i]);
            coef *= pw;
            rest.exps[i] = 0;
        }
        out.emplace_back(std::move(rest), coef);
    }
    return MPoly::from_terms(std::move(out));
}

Assignment make_assignment(const std::vector<std::pair<std::string, BigRat>>& values) {
    Assignment a;
    for (auto& [n, v] : values) a[VarRegistry::id(n)] = v;
    return a;
}

// ---------------------------------------------------------------- elimination

namespace {

// Clears denominators row by row; returns the integer matrix and the product
// of the row multipliers.
Matrix<BigInt> integral_rows(const QMatrix& m, BigInt* scale_out) {
    Matrix<BigInt> z(m.rows(), m.cols());
    BigInt total = 1;
    for (int i = 0; i < m.rows(); ++i) {
        BigInt l = 1;
        for (int j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (int j = 0; j < m.cols(); ++j) z(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
        total *= l;
    }
    if (scale_out) *scale_out = total;
    return z;
}

// In-place Bareiss elimination. Returns the rank; `sign` tracks row swaps and
// `last_pivot` holds the final leading minor when the matrix is square and
// nonsingular.
int bareiss(Matrix<BigInt>& a, int* sign, BigInt* last_pivot) {
    int rows = a.rows(), cols = a.cols();
    int r = 0;
    BigInt prev = 1;
    int s = 1;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
            s = -s;
        }
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                BigInt v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    if (sign) *sign = s;
    if (last_pivot) *last_pivot = prev;
    return r;
}

}  // namespace

BigRat det(const QMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix is not square");
    if (m.rows() == 0) return 1;
    BigInt scale;
    auto z = integral_rows(m, &scale);
    int sign = 1;
    BigInt last;
    int r = bareiss(z, &sign, &last);
    if (r < m.rows()) return 0;
    BigRat d(last * sign, scale);
    d.canonicalize();
    return d;
}

MPoly det(const PMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix is not square");
    int n = m.rows();
    if (n == 0) return MPoly(1);
    if (n > 12) throw std::invalid_argument("det: polynomial matrices above 12x12 are not supported");
    // Laplace expansion along rows top to bottom, memoized on the set of
    // columns still available.
    std::unordered_map<std::uint32_t, MPoly> memo;
    std::function<MPoly(int, std::uint32_t)> rec = [&](int row, std::uint32_t mask) -> MPoly {
        if (row == n) return MPoly(1);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        MPoly total;
        int pos = 0;
        for (int c = 0; c < n; ++c) {
            if (!(mask & (1u << c))) continue;
            if (!m(row, c).is_zero()) {
                MPoly sub = rec(row + 1, mask & ~(1u << c));
                if (!sub.is_zero()) {
                    MPoly t = m(row, c) * sub;
                    if (pos % 2) total -= t;
                    else total += t;
                }
            }
            ++pos;
        }
        memo.emplace(mask, total);
        return total;
    };
    return rec(0, (n == 32 ? 0xffffffffu : ((1u << n) - 1)));
}

namespace {
void check_minor_indices(int rows, int cols, const std::vector<int>& rs, const std::vector<int>& cs) {
    if (rs.size() != cs.size()) throw std::invalid_argument("minor: row and column sets differ in size");
    for (int r : rs)
        if (r < 0 || r >= rows) throw std::out_of_range("minor: row index out of range");
    for (int c : cs)
        if (c < 0 || c >= cols) throw std::out_of_range("minor: column index out of range");
}
}  // namespace

BigRat minor(const QMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    check_minor_indices(m.rows(), m.cols(), rows, cols);
    auto rs = rows, cs = cols;
    std::sort(rs.begin(), rs.end());
    std::sort(cs.begin(), cs.end());
    return det(m.submatrix(rs, cs));
}

MPoly minor(const PMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    check_minor_indices(m.rows(), m.cols(), rows, cols);
    auto rs = rows, cs = cols;
    std::sort(rs.begin(), rs.end());
    std::sort(cs.begin(), cs.end());
    return det(m.submatrix(rs, cs));
}

int rank(const QMatrix& m) {
    auto z = integral_rows(m, nullptr);
    return bareiss(z, nullptr, nullptr);
}

int rank_transposed(const QMatrix& m) { return rank(m.transpose()); }

QMatrix evaluate(const PMatrix& m, const Assignment& point) {
    QMatrix q(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) q(i, j) = substitute(m(i, j), point);
    return q;
}

int rank_at(const PMatrix& m, const Assignment& point) { return rank(evaluate(m, point)); }

Assignment seeded_random_point(std::uint64_t seed, const std::vector<int>& variables, const std::vector<MPoly>& avoid,
                               int max_tries, long range) {
    std::vector<int> vars = variables;
    for (auto& f : avoid)
        for (int v : f.variables()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

    std::mt19937_64 gen(seed);
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        if (attempt > 0 && attempt % 8 == 0) range *= 2;
        std::uniform_int_distribution<long> dist(-range, range);
        Assignment a;
        for (int v : vars) a[v] = BigRat(dist(gen));
        bool ok = true;
        for (auto& f : avoid)
            if (substitute(f, a) == 0) {
                ok = false;
                break;
            }
        if (ok) return a;
    }
    throw std::runtime_error("seeded_random_point: retry budget exhausted");
}

int permutation_sign(const std::vector<int>& seq) {
    int sign = 1;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j) {
            if (seq[i] == seq[j]) return 0;
            if (seq[i] > seq[j]) sign = -sign;
        }
    return sign;
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

}  // namespace resatlas
