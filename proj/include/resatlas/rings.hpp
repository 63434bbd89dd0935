#pragma once

#include <map>
#include <string>
#include <vector>

#include "resatlas/exact.hpp"
#include "resatlas/format.hpp"
#include "resatlas/kacmoody.hpp"
#include "resatlas/schur.hpp"

namespace resatlas {

// (a, b, c, alpha, beta, gamma) indexing a summand of R_a (length-3 formats).
struct MuIndex {
    long long a = 0, b = 0, c = 0;
    Partition alpha, beta, gamma;  // trimmed (no trailing zeros)

    long long total() const;
    std::string to_string() const;
    auto tie() const { return std::tie(a, b, c, alpha, beta, gamma); }
    bool operator<(const MuIndex& o) const { return tie() < o.tie(); }
    bool operator==(const MuIndex& o) const { return tie() == o.tie(); }
};

// Weights on F_3, F_2, F_1, F_0 (lengths f_3, f_2, f_1, f_0).
struct GLWeightQuadruple {
    GLWeight F3, F2, F1, F0;
    bool dominant() const;
    auto tie() const { return std::tie(F3, F2, F1, F0); }
    bool operator<(const GLWeightQuadruple& o) const { return tie() < o.tie(); }
    bool operator==(const GLWeightQuadruple& o) const { return tie() == o.tie(); }
};

std::string gl_weight_string(const GLWeight& w);

// Throws invalid_argument when a part-count bound fails or a, b, c < 0.
void check_mu(const MuIndex& mu, const ResolutionFormat& fmt);

GLWeightQuadruple ra_component(const MuIndex& mu, const ResolutionFormat& fmt);

// General length-n version: x[i-1] = x^{(i)} and parts[i-1] = alpha^{(i)} for
// i = 1..n. Returns the weights on F_0..F_n.
std::vector<GLWeight> ra_general_component(const std::vector<long long>& x, const std::vector<Partition>& parts,
                                           const ResolutionFormat& fmt);

struct RaRow {
    MuIndex mu;
    GLWeightQuadruple weights;
};

// Every summand with a+b+c+|alpha|+|beta|+|gamma| <= cutoff, ordered by that
// total and then by mu. Throws logic_error if two summands share a weight or
// if either parity projection fails to be injective.
std::vector<RaRow> ra_enumerate(const ResolutionFormat& fmt, int cutoff);

// All sextuples with the given total, in canonical order.
std::vector<MuIndex> mu_with_total(const ResolutionFormat& fmt, int total);

struct HomologyReport {
    std::vector<std::vector<GLWeight>> weights;  // each entry: weights on F_0..F_n
    std::vector<GLWeight> generator;             // minimal generator, F_0..F_n
    bool generator_is_wedge = false;             // F_{j-1} part is wedge^{r_{j-1}+1} up to a twist
};

// Dominant weights of H_{j-1}(F_a) of total degree <= cutoff. Empty for
// j - 1 in {n - 1, n}; invalid_argument when j - 1 < 1 or j - 1 > n.
HomologyReport homology_weights(const ResolutionFormat& fmt, int j, int cutoff);

struct RspecComponent {
    GLWeight sigma, tau, theta, phi;
    Weight lambda;  // labels on T_{p,q,r}
};

RspecComponent rspec_component(const MuIndex& mu, const ResolutionFormat& fmt);
// Rebuild tau from the x/u/y labels of lambda given its last entry.
GLWeight tau_from_lambda(const TpqrGraph& g, const Weight& lambda, long long last);

struct GeneratorFamily {
    int number = 0;  // 1..6
    std::vector<MuIndex> members;
    std::string note;               // reason when absent
    std::vector<std::string> labels;  // component names where known
};

std::vector<GeneratorFamily> semigroup_generators(const ResolutionFormat& fmt);

struct KStarTerm {
    GLWeight sigma;  // on F_3
    GLWeight tau;    // on F_1^*
    std::string name;
};

struct KStarComplex {
    std::vector<KStarTerm> top;  // one or two summands (the second needs r_3 >= 2)
    KStarTerm middle, bottom;
    long long s = 0, u = 0, t = 0;
};

// `u_offset` shifts the u-equation; only used to confirm the cross-check
// notices a wrong term.
KStarComplex kstar_terms(const GLWeight& sigma, const GLWeight& tau, long long t, const ResolutionFormat& fmt,
                         long long u_offset = 0);

// The weight of T_{p,q,r} attached to (sigma, tau, a), with sigma read on the
// z-arm from z_2 outward.
Weight kstar_lambda(const TpqrGraph& g, const GLWeight& sigma, const GLWeight& tau, long long a);

struct CrosscheckReport {
    bool ok = false;
    std::vector<std::string> lines;
};

CrosscheckReport dictionary_crosscheck(const GLWeight& sigma, const GLWeight& tau, long long t,
                                       const ResolutionFormat& fmt, long long u_offset = 0);

struct HilbertCell {
    std::vector<long long> multidegree;  // (a, b, c, |alpha|, |beta|, |gamma|)
    BigInt dim;
};

std::vector<HilbertCell> hilbert_truncation(const ResolutionFormat& fmt, int cutoff);

// dim V(lambda) for a finite-type matrix, memoized per call site.
BigInt irreducible_dim(const GCM& A, const Weight& lambda);

}  // namespace resatlas
