#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "resatlas/exact.hpp"

namespace resatlas {

// 0 -> F_n -> ... -> F_0 with d[i-1] = d_i of shape f_{i-1} x f_i.
struct FreeComplex {
    std::string name;
    std::vector<int> f;
    std::vector<PMatrix> d;

    int length() const { return static_cast<int>(d.size()); }
    const PMatrix& map(int i) const { return d.at(i - 1); }
    PMatrix& map(int i) { return d.at(i - 1); }
    void check_shapes() const;  // throws invalid_argument
};

struct CompositionReport {
    bool ok = true;
    std::vector<std::string> nonzero;  // "d_1*d_2 (0,3): X1*X2 - ..."
};

CompositionReport verify_complex(const FreeComplex& c);

struct RankReport {
    bool ok = false;
    std::vector<int> expected;  // r_1..r_n
    std::vector<int> observed;
    std::vector<std::string> certificate;
    Assignment point;
};

// Ranks of every d_i at a seeded point chosen off the zero sets of one
// nonzero r_i x r_i minor per map.
RankReport be_rank_check(const FreeComplex& c, std::uint64_t seed);

struct MultiplierReport {
    bool ok = false;
    std::vector<int> ranks;                        // r_1..r_n
    std::vector<std::vector<BigRat>> a;            // a[i-1] indexed by k_subsets(f_{i-1}, r_i)
    std::vector<std::string> lines;
};

// Multipliers a_1..a_n of a numeric complex over Q and a check that every
// r_i x r_i minor of d_i equals a_i[I] * eps(J, J^c) * a_{i+1}[J^c].
MultiplierReport be_multipliers(const std::vector<QMatrix>& d, const std::vector<int>& f);
std::vector<QMatrix> specialize(const FreeComplex& c, const Assignment& point);

FreeComplex koszul_complex(int n);
FreeComplex split_d4_complex();

struct ATypeFamily {
    FreeComplex complex;
    PMatrix delta;         // skew (r3+2) x (r3+2)
    PMatrix X;             // B^T delta B
    std::array<MPoly, 3> x;
    std::string delta_convention;
    bool skew_pattern_ok = false;
    bool delta_kills_d3 = false;
};

// Generic d_3 with entries A{i}_{j} and B with entries B{i}_{j}; the scalar a_1 is one more
// variable. Format (1, 3, r3+2, r3).
ATypeFamily atype_family_build(int r3);

// Variables X1..X_{2t}; format (1, 2t, 2t, 1).
FreeComplex monomial_complex(int t);
std::vector<MPoly> monomial_generators(int t);  // the stated p_1..p_{2t}

struct D4Tables {
    std::map<std::pair<int, int>, std::array<MPoly, 4>> ee;  // e_i e_j, i < j, on f_1..f_4
    std::map<std::pair<int, int>, MPoly> ef;                 // e_i f_j = (entry) g
    std::map<std::tuple<int, int, int>, MPoly> eee;          // e_i e_j e_k, i < j < k
    std::array<MPoly, 4> v2;
};

struct SplitD4Model {
    D4Tables verbatim;      // entries as printed
    D4Tables leibniz;       // e f and e e e recomputed from e e and the differentials
    std::vector<std::string> table_conflicts;  // entries where the two disagree
    FreeComplex complex;
};

SplitD4Model d4_split_model();

struct D4RelationSide {
    std::string c_table;   // "verbatim" or "leibniz"
    std::array<int, 3> eps{1, 1, 1};  // (c-extraction, p-extraction, v_2)
    bool found = false;
    MPoly lhs, rhs;
};

struct D4RelationReport {
    bool ok = false;  // some normalization makes both sides the Pfaffian
    MPoly pfaffian;
    std::vector<D4RelationSide> attempts;
    D4RelationSide chosen;
};

D4RelationReport d4_relation_check();
MPoly d4_pfaffian();
// b_{ij} -> b_{pi(i) pi(j)}, with b_{ji} = -b_{ij}; perm is 1-based on {1,2,3,4}.
MPoly permute_b_variables(const MPoly& f, const std::array<int, 4>& perm);

// Coefficient u_{I,J,K} (1-based indices) over generic d_3 (P{i}_{j}, f_2 x f_3)
// and d_2 (Q{i}_{j}, f_1 x f_2); t picks the dual basis vector of F_3.
MPoly q1_coefficient(const std::vector<int>& f, const std::vector<int>& I, const std::vector<int>& J,
                     const std::vector<int>& K, int t = 1);

// Seeded values for the P and Q variables of q1_coefficient with d_2 * d_3 = 0
// and rank d_3 = r_3, rank d_2 = r_2.
Assignment q1_complex_point(const std::vector<int>& f, std::uint64_t seed);

struct Q1SymmetryReport {
    bool ok = false;
    std::size_t triples = 0;
    int points = 0;
    std::size_t antisym_nonzero_generic = 0;  // triples with u_IJK - u_IKJ != 0 at a free point
    std::size_t sym_nonzero_generic = 0;      // triples with u_IJK + u_IKJ != 0 at a free point
    std::size_t sym_nonzero_on_complex = 0;   // (point, triple) pairs where the sum survives d_2 d_3 = 0
    std::vector<std::string> lines;
};

// Over all I and unordered pairs J != K (sorted), t = 1.
Q1SymmetryReport q1_symmetry_check(const std::vector<int>& f, std::uint64_t seed, int points = 10);

}  // namespace resatlas
