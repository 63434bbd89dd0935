#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resatlas/budget.hpp"
#include "resatlas/exact.hpp"

namespace resatlas {

// The tree T_{p,q,r}: a central vertex u with arms x_1..x_{p-1},
// y_1..y_{q-1}, z_1..z_{r-1}. Vertices are 0-based internally and follow the
// 1-based layout u = 1, x_i = 1+i, y_j = p+j, z_k = p+q-1+k shifted down by one.
struct TpqrGraph {
    int p = 0, q = 0, r = 0, n = 0;
    std::vector<std::vector<int>> adj;

    static TpqrGraph make(int p, int q, int r);
    int u() const { return 0; }
    int x(int i) const { return i; }
    int y(int j) const { return p - 1 + j; }
    int z(int k) const { return p + q - 2 + k; }
    int z1() const { return z(1); }
    std::string vertex_name(int v) const;
    int vertex_by_name(const std::string& name) const;  // -1 if unknown
    std::vector<int> S() const;                         // all vertices except z_1
    int arm_length(char arm) const;
    int arm_vertex(char arm, int i) const;              // arm 'x','y','z', 1-based position
};

using GCM = std::vector<std::vector<int>>;
using Weight = std::vector<long long>;   // fundamental-weight labels
using RootVec = std::vector<int>;        // simple-root coefficients

GCM cartan_matrix(const TpqrGraph& g);

Weight rho(int n);
Weight fundamental_weight(int n, int v);
Weight reflect(const GCM& A, const Weight& w, int i);
RootVec reflect_root(const GCM& A, const RootVec& beta, int i);
// Labels <beta, alpha_i^vee> of an element of the root lattice.
Weight root_to_weight(const GCM& A, const RootVec& beta);
long long pairing(const GCM& A, const RootVec& a, const RootVec& b);  // (a|b) for symmetric A

// A Weyl group element stored as a word; the element is s_{word[0]} s_{word[1]} ...
// and acts right to left. `key` is its image of rho.
struct WeylElem {
    std::vector<int> word;
    Weight key;
    int length() const { return static_cast<int>(word.size()); }
};

Weight apply_word(const GCM& A, const std::vector<int>& word, const Weight& w);
RootVec apply_word_root(const GCM& A, const std::vector<int>& word, const RootVec& beta);
Weight dot_action(const GCM& A, const std::vector<int>& word, const Weight& lambda);
// lambda - w.lambda in simple-root coordinates.
RootVec dot_shift(const GCM& A, const std::vector<int>& word, const Weight& lambda);
// Inversion set {alpha > 0 : w^{-1} alpha < 0} read off a reduced word.
std::vector<RootVec> inversion_roots(const GCM& A, const std::vector<int>& word);

struct Root {
    RootVec k;
    long long mult = 0;
    int height = 0;
};

struct RootSystem {
    int n = 0;
    std::vector<Root> positive;  // sorted by height, then lexicographically
    int max_height = 0;          // height cap that was requested
    bool complete = false;       // true when no root exists above the cap
    int level_vertex = -1;       // optional coordinate cap used during enumeration
    int level_cap = -1;
    long long count_with_mult() const;
    std::optional<long long> mult_of(const RootVec& k) const;
};

// Positive roots of height <= H (and, when level_vertex >= 0, with that
// coefficient <= level_cap), multiplicities solved from the truncated
// denominator identity one height at a time.
RootSystem enumerate_roots(const GCM& A, int H, const Budget& budget = Budget{}, int level_vertex = -1,
                           int level_cap = -1);

// Independent check of the denominator identity on every point of height <= H:
// expands the product side over the full lattice box and compares with the
// alternating Weyl sum.
bool denominator_identity_holds(const GCM& A, const RootSystem& roots, int H, std::string* detail = nullptr);

struct WSEnumeration {
    std::vector<std::vector<WeylElem>> by_length;
    bool cross_checked = false;  // full ball of W compared against the definition
};

// Elements w with no left descent in S (equivalently Phi_w inside Delta_+(S)),
// grouped by length 0..L.
WSEnumeration enumerate_WS(const GCM& A, const std::vector<int>& S, int L, const Budget& budget = Budget{},
                           std::size_t cross_check_limit = 200000);

std::vector<Weight> kostant_weights(const GCM& A, const std::vector<int>& S, int k, int L,
                                    const Budget& budget = Budget{});

struct DefectDims {
    std::vector<long long> dims;       // dims[m-1] = dim L_m for m = 1..m_max
    bool finite_class = false;
    std::optional<long long> total;    // dim of the whole positive part, finite class only
    int top_level = 0;                 // largest nonzero level found
};

DefectDims defect_graded_dims(int p, int q, int r, int m_max, const Budget& budget = Budget{});

// Searches for a real root whose coefficient at `vertex` equals `level`,
// walking up through simple reflections. Returns it when found.
std::optional<RootVec> real_root_at_level(const GCM& A, int vertex, int level, std::size_t limit = 2'000'000);

struct GradedDims {
    std::vector<BigInt> levels;  // by ht^S relative to the highest weight
    BigInt total;
};

// Truncated series on the positive root lattice; coefficient of x^gamma is the
// multiplicity of weight (reference - gamma).
using LatticeSeries = std::map<RootVec, long long>;

// Weyl-Kac character of V(lambda) for a finite-type matrix, graded by the
// coefficient at `grade_vertex` (the ht^S grading for S = all but that vertex).
GradedDims weyl_kac_character(const GCM& A, const Weight& lambda, int grade_vertex, int cutoff);
LatticeSeries weyl_kac_series(const GCM& A, const Weight& lambda);
std::map<Weight, long long> weight_multiset(const GCM& A, const Weight& lambda);
BigRat weyl_dimension(const GCM& A, const Weight& lambda);

// Graded dims of the parabolic Verma module M(mu)^(S), S = all but grade_vertex,
// levels counted from mu itself.
GradedDims parabolic_verma_character(const GCM& A, int grade_vertex, const Weight& mu, int cutoff);

struct BGGLayers {
    std::vector<std::vector<Weight>> layers;          // layers[0] = {lambda}, ...
    std::vector<std::vector<std::vector<int>>> words; // matching Weyl words
    bool closed_forms_ok = false;
    std::vector<std::string> notes;
};

BGGLayers bgg_initial_terms(const TpqrGraph& g, const Weight& lambda);

struct EulerCheck {
    bool ok = false;
    int first_bad_level = -1;
    std::string detail;
};

// Alternating sum over W(S) of parabolic Verma characters against the Weyl-Kac
// character, compared coefficient by coefficient up to `cutoff` in the
// grading. `perturb_u` adds that amount at vertex u to the first length-2
// weight (used to confirm that a wrong layer is detected).
EulerCheck bgg_euler_check(const TpqrGraph& g, const Weight& lambda, int cutoff, long long perturb_u = 0);

// Euler characteristic of the exterior algebra of the negative nilradical
// against the alternating sum of Levi characters of w rho - rho, w in W(S),
// truncated at level `cutoff`.
bool kostant_euler_identity(const TpqrGraph& g, int cutoff, std::string* detail = nullptr);

bool fundamental_in_exterior_check(const TpqrGraph& g, char arm, int i);

std::string weight_to_string(const TpqrGraph& g, const Weight& w);

}  // namespace resatlas
