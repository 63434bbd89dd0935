#include "resatlas/format.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "resatlas/exact.hpp"
#include "resatlas/kacmoody.hpp"

namespace resatlas {

namespace {
std::string join_ints(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}
}  // namespace

std::string ResolutionFormat::to_string() const { return join_ints(f); }

std::string ResolutionFormat::reversed_string() const {
    std::vector<int> rev(f.rbegin(), f.rend());
    return join_ints(rev);
}

ResolutionFormat derive_ranks(const std::vector<int>& f) {
    ResolutionFormat fmt;
    fmt.f = f;
    int n = static_cast<int>(f.size()) - 1;
    if (n < 1) {
        fmt.diagnosis = "a format needs at least two ranks";
        return fmt;
    }
    fmt.r.assign(n + 1, 0);
    int next = 0;  // r_{i+1}
    for (int i = n; i >= 0; --i) {
        fmt.r[i] = f[i] - next;
        next = fmt.r[i];
    }
    for (int i = 0; i <= n; ++i)
        if (f[i] < 1) {
            fmt.diagnosis = "f_" + std::to_string(i) + " = " + std::to_string(f[i]) + " is not positive";
            return fmt;
        }
    for (int i = n; i >= 1; --i)
        if (fmt.r[i] < 1) {
            fmt.diagnosis = "r_" + std::to_string(i) + " = " + std::to_string(fmt.r[i]) + " < 1";
            return fmt;
        }
    if (fmt.r[0] < 0) {
        fmt.diagnosis = "r_0 = f_0 - r_1 = " + std::to_string(fmt.r[0]) + " < 0";
        return fmt;
    }
    fmt.valid = true;
    return fmt;
}

std::vector<int> format_for_pqr(int p, int q, int r) { return {p - 1, p + q, q + r, r - 1}; }

std::string TpqrClass::kind_name() const {
    switch (kind) {
        case TpqrKind::Finite: return "finite";
        case TpqrKind::Affine: return "affine";
        default: return "indefinite";
    }
}

Signature signature_of(const std::vector<std::vector<int>>& sym) {
    int n = static_cast<int>(sym.size());
    std::vector<std::vector<BigRat>> m(n, std::vector<BigRat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = sym[i][j];
    std::vector<int> active(n);
    for (int i = 0; i < n; ++i) active[i] = i;
    Signature s;
    while (!active.empty()) {
        int piv = -1;
        for (int i : active)
            if (m[i][i] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) {
            // No usable diagonal entry: fold a row with an off-diagonal
            // partner into it, which creates a nonzero diagonal entry.
            int a = -1, b = -1;
            for (int i : active) {
                for (int j : active)
                    if (i != j && m[i][j] != 0) {
                        a = i, b = j;
                        break;
                    }
                if (a >= 0) break;
            }
            if (a < 0) {
                s.n_zero += static_cast<int>(active.size());
                break;
            }
            for (int k = 0; k < n; ++k) m[a][k] += m[b][k];
            for (int k = 0; k < n; ++k) m[k][a] += m[k][b];
            piv = a;
        }
        if (m[piv][piv] > 0) ++s.n_plus;
        else ++s.n_minus;
        active.erase(std::find(active.begin(), active.end(), piv));
        for (int j : active) {
            if (m[j][piv] == 0) continue;
            BigRat factor = m[j][piv] / m[piv][piv];
            for (int k : active) m[j][k] -= factor * m[piv][k];
        }
        for (int j : active) m[j][piv] = m[piv][j] = 0;
    }
    return s;
}

TpqrKind harmonic_kind(int p, int q, int r) {
    // compare qr + pr + pq with pqr
    long lhs = static_cast<long>(q) * r + static_cast<long>(p) * r + static_cast<long>(p) * q;
    long rhs = static_cast<long>(p) * q * r;
    if (lhs > rhs) return TpqrKind::Finite;
    if (lhs == rhs) return TpqrKind::Affine;
    return TpqrKind::Indefinite;
}

namespace {
std::string case_for_ordering(int p, int q, int r) {
    if (q == 1 && p >= 1 && r >= 1) return "A" + std::to_string(p + r - 1);
    if (p < 2 || q < 2 || r < 2) return "";
    if (p == 2 && q == 2) return "D" + std::to_string(r + 2);
    if (q == 2 && r == 2 && p >= 3) return "D" + std::to_string(p + 2);
    if (q == 2 && r == 3 && p >= 3 && p <= 5) return "E" + std::to_string(p + 3);
    if (q == 3 && r == 2 && p >= 3 && p <= 5) return "E" + std::to_string(p + 3);
    if (q == 2 && p == 3 && (r == 4 || r == 5)) return "E" + std::to_string(r + 3);
    return "";
}
}  // namespace

std::string case_list_dynkin(int p, int q, int r) {
    std::array<int, 3> v{p, q, r};
    std::sort(v.begin(), v.end());
    do {
        auto name = case_for_ordering(v[0], v[1], v[2]);
        if (!name.empty()) return name;
    } while (std::next_permutation(v.begin(), v.end()));
    return "";
}

TpqrClass classify(int p, int q, int r) {
    if (p < 2 || q < 1 || r < 2) throw std::invalid_argument("classify: need p >= 2, q >= 1, r >= 2");
    auto graph = TpqrGraph::make(p, q, r);
    auto A = cartan_matrix(graph);
    Signature sig = signature_of(A);
    TpqrClass c;
    c.n_plus = sig.n_plus;
    c.n_zero = sig.n_zero;
    c.n_minus = sig.n_minus;
    c.cartan_rank = sig.n_plus + sig.n_minus;
    if (sig.n_zero == 0 && sig.n_minus == 0) c.kind = TpqrKind::Finite;
    else if (sig.n_zero == 1 && sig.n_minus == 0) c.kind = TpqrKind::Affine;
    else if (sig.n_minus == 1) c.kind = TpqrKind::Indefinite;
    else throw std::logic_error("classify: unexpected signature for T_{p,q,r}");

    std::string name = case_list_dynkin(p, q, r);
    bool listed = !name.empty();
    if (listed != (c.kind == TpqrKind::Finite) || harmonic_kind(p, q, r) != c.kind)
        throw std::logic_error("classify: signature, harmonic rule and case list disagree");
    c.dynkin = name;
    return c;
}

bool noetherian_generic_ring(const ResolutionFormat& fmt) {
    if (!fmt.valid || fmt.length() != 3) throw std::invalid_argument("noetherian_generic_ring: need a valid length-3 format");
    return classify(fmt.p(), fmt.q(), fmt.rr()).kind == TpqrKind::Finite;
}

bool cyclic_exists(int n, int l) { return (l >= 3 && n >= 2) || (n == 1 && l > 0 && l % 2 == 0); }

int euler_characteristic(const std::vector<int>& f) {
    int s = 0;
    for (std::size_t i = 0; i < f.size(); ++i) s += (i % 2 ? -f[i] : f[i]);
    return s;
}

bool format_exists(const std::vector<int>& f) {
    if (f.size() != 4) return false;
    if (euler_characteristic(f) != 0) return false;
    auto fmt = derive_ranks(f);
    return fmt.valid && fmt.r[2] > 1;
}

}  // namespace resatlas
