#pragma once

#include <string>
#include <vector>

namespace resatlas {

// Ranks f_0..f_n of a free complex 0 -> F_n -> ... -> F_0 together with the
// expected map ranks r_i (r_i + r_{i+1} = f_i, r_{n+1} = 0).
struct ResolutionFormat {
    std::vector<int> f;  // f[0] = f_0
    std::vector<int> r;  // r[0] = r_0 = f_0 - r_1, r[i] = rank of d_i
    bool valid = false;
    std::string diagnosis;  // empty when valid

    int length() const { return static_cast<int>(f.size()) - 1; }
    // Only meaningful for valid formats of length 3.
    int p() const { return r[1] + 1; }
    int q() const { return r[2] - 1; }
    int rr() const { return r[3] + 1; }
    std::string to_string() const;          // "(f0,f1,f2,f3)"
    std::string reversed_string() const;    // "(f3,f2,f1,f0)"
};

ResolutionFormat derive_ranks(const std::vector<int>& f);

// The length-3 format with r_0 = 0 whose graph is T_{p,q,r}: (p-1, p+q, q+r, r-1).
std::vector<int> format_for_pqr(int p, int q, int r);

enum class TpqrKind { Finite, Affine, Indefinite };

struct TpqrClass {
    TpqrKind kind = TpqrKind::Indefinite;
    std::string dynkin;  // "D4", "E8", "A5", ... for the finite kind
    int n_plus = 0, n_zero = 0, n_minus = 0;
    int cartan_rank = 0;
    std::string kind_name() const;
};

struct Signature {
    int n_plus = 0, n_zero = 0, n_minus = 0;
};

// Inertia of a symmetric integer matrix by exact congruence diagonalization.
Signature signature_of(const std::vector<std::vector<int>>& sym);

// Finite / affine / indefinite by the harmonic sum 1/p + 1/q + 1/r.
TpqrKind harmonic_kind(int p, int q, int r);
// Dynkin label from the finite-dimensionality case list (applied to every
// ordering of the three arms); empty when no case applies.
std::string case_list_dynkin(int p, int q, int r);
TpqrClass classify(int p, int q, int r);

bool noetherian_generic_ring(const ResolutionFormat& fmt);

// True when (n,l) falls under one of the two proven existence statements. A
// false answer means "not covered", not a proof of non-existence.
bool cyclic_exists(int n, int l);
int euler_characteristic(const std::vector<int>& f);
bool format_exists(const std::vector<int>& f);

}  // namespace resatlas
