#include <algorithm>
#include <set>

#include "doctest.h"
#include "resatlas/complexes.hpp"
#include "resatlas/format.hpp"

using namespace resatlas;

namespace {

MPoly X(int i) { return MPoly::var("X" + std::to_string(i)); }

BigRat abs_q(const BigRat& v) { return v < 0 ? BigRat(-v) : v; }

std::vector<int> complement(const std::vector<int>& s, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (std::find(s.begin(), s.end(), i) == s.end()) out.push_back(i);
    return out;
}

// Each r_i x r_i minor of d_i must have the absolute value of
// a_i[I] * a_{i+1}[complement of J]; a_n is the vector of maximal minors of d_n.
void check_factorization_magnitudes(const std::vector<QMatrix>& d, const MultiplierReport& rep) {
    int n = static_cast<int>(d.size());
    REQUIRE(static_cast<int>(rep.a.size()) == n);
    std::vector<int> ranks;
    for (auto& m : d) ranks.push_back(rank(m));
    CHECK(ranks == rep.ranks);
    auto last = k_subsets(d[n - 1].rows(), ranks[n - 1]);
    std::vector<int> all_cols(d[n - 1].cols());
    for (int j = 0; j < d[n - 1].cols(); ++j) all_cols[j] = j;
    for (std::size_t k = 0; k < last.size(); ++k) CHECK(rep.a[n - 1][k] == minor(d[n - 1], last[k], all_cols));
    for (int i = 0; i + 1 < n; ++i) {
        auto rows = k_subsets(d[i].rows(), ranks[i]);
        auto cols = k_subsets(d[i].cols(), ranks[i]);
        auto next = k_subsets(d[i + 1].rows(), ranks[i + 1]);
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (auto& J : cols) {
                auto Jc = complement(J, d[i].cols());
                auto pos = std::find(next.begin(), next.end(), Jc) - next.begin();
                CHECK(abs_q(minor(d[i], rows[a], J)) == abs_q(rep.a[i][a] * rep.a[i + 1][pos]));
            }
    }
}

}  // namespace

TEST_SUITE("complexes") {

TEST_CASE("Koszul complex") {
    auto k = koszul_complex(3);
    CHECK(k.f == std::vector<int>{1, 3, 3, 1});
    CHECK(verify_complex(k).ok);
    auto rep = be_rank_check(k, 1);
    CHECK(rep.ok);
    CHECK(rep.observed == std::vector<int>{1, 2, 1});
}

TEST_CASE("a perturbed entry is reported by position") {
    auto m = monomial_complex(2);
    m.map(2)(0, 0) += X(1);
    auto rep = verify_complex(m);
    CHECK_FALSE(rep.ok);
    REQUIRE_FALSE(rep.nonzero.empty());
    bool named = false;
    for (auto& line : rep.nonzero) named = named || line.find("d_") != std::string::npos;
    CHECK(named);
}

TEST_CASE("shape errors and the zero complex") {
    FreeComplex bad{"bad", {1, 2, 1}, {PMatrix(1, 2), PMatrix(3, 1)}};
    CHECK_THROWS_AS(bad.check_shapes(), std::invalid_argument);
    FreeComplex zero{"zero", {1, 2, 1}, {PMatrix(1, 2), PMatrix(2, 1)}};
    CHECK(verify_complex(zero).ok);
    CHECK_FALSE(be_rank_check(zero, 1).ok);
}

TEST_CASE("A-type family with r3 = 1") {
    auto b = atype_family_build(1);
    MPoly a1 = MPoly::var("A1_1"), a2 = MPoly::var("A2_1"), a3 = MPoly::var("A3_1");
    PMatrix cross{{0, a3, -a2}, {-a3, 0, a1}, {a2, -a1, 0}};
    CHECK(b.delta == cross);
    CHECK(matmul(b.delta, b.complex.map(3)).is_zero());
    CHECK(b.skew_pattern_ok);
    CHECK(b.delta_kills_d3);
    // the 3 x 3 matrix B^T Delta B has the displayed skew shape
    const PMatrix& x = b.X;
    CHECK(x(0, 1) == b.x[2]);
    CHECK(x(0, 2) == -b.x[1]);
    CHECK(x(1, 2) == b.x[0]);
    for (int i = 0; i < 3; ++i) CHECK(x(i, i).is_zero());
    CHECK(verify_complex(b.complex).ok);
}

TEST_CASE("A-type family verifies with the expected ranks") {
    for (int r3 = 1; r3 <= 3; ++r3) {
        auto b = atype_family_build(r3);
        CHECK(b.complex.f == std::vector<int>{1, 3, r3 + 2, r3});
        CHECK(verify_complex(b.complex).ok);
        auto rep = be_rank_check(b.complex, 1);
        CHECK(rep.ok);
        CHECK(rep.observed == std::vector<int>{1, 2, r3});
        // Delta is skew
        for (int i = 0; i < r3 + 2; ++i)
            for (int j = 0; j < r3 + 2; ++j) CHECK(b.delta(i, j) == -b.delta(j, i));
    }
}

TEST_CASE("multipliers of the A-type family at seeded points") {
    auto b = atype_family_build(2);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto rep = be_rank_check(b.complex, seed);
        REQUIRE(rep.ok);
        auto d = specialize(b.complex, rep.point);
        auto mult = be_multipliers(d, b.complex.f);
        CHECK(mult.ok);
        check_factorization_magnitudes(d, mult);
    }
}

TEST_CASE("monomial family generators") {
    auto p = monomial_generators(2);
    CHECK(p == std::vector<MPoly>{X(1) * X(2), X(2) * X(3), X(3) * X(4), X(4) * X(1)});
    for (int t = 2; t <= 5; ++t) {
        auto m = monomial_complex(t);
        auto gens = monomial_generators(t);
        MPoly all = 1;
        for (int i = 1; i <= 2 * t; ++i) all *= X(i);
        // p_i is the full product with X_{i-2}, X_{i-1} removed (cyclically)
        for (int i = 1; i <= 2 * t; ++i) {
            int a = (i - 3 + 2 * t) % (2 * t) + 1, c = (i - 2 + 2 * t) % (2 * t) + 1;
            CHECK(gens[i - 1] * X(a) * X(c) == all);
            CHECK(m.map(1)(0, i - 1) == gens[i - 1]);
        }
        // first row of d_2
        CHECK(m.map(2)(0, 0) == X(2 * t - 1));
        CHECK(m.map(2)(0, 2 * t - 1) == -X(2 * t));
        for (int j = 1; j < 2 * t - 1; ++j) CHECK(m.map(2)(0, j).is_zero());
        CHECK(verify_complex(m).ok);
        auto rep = be_rank_check(m, 1);
        CHECK(rep.ok);
        CHECK(rep.observed == std::vector<int>{1, 2 * t - 1, 1});
    }
    CHECK_THROWS_AS(monomial_complex(1), std::invalid_argument);
}

TEST_CASE("multipliers of the monomial complex at an integer point") {
    auto m = monomial_complex(2);
    auto d = specialize(m, make_assignment({{"X1", 1}, {"X2", 2}, {"X3", 3}, {"X4", 5}}));
    auto rep = be_multipliers(d, m.f);
    CHECK(rep.ok);
    check_factorization_magnitudes(d, rep);
}

TEST_CASE("split complex multipliers are units on coordinate vectors") {
    auto s = split_d4_complex();
    CHECK(verify_complex(s).ok);
    auto rep = be_multipliers(specialize(s, {}), s.f);
    CHECK(rep.ok);
    for (auto& a : rep.a) {
        int nonzero = 0;
        for (auto& v : a)
            if (v != 0) {
                ++nonzero;
                CHECK(abs_q(v) == 1);
            }
        CHECK(nonzero == 1);
    }
}

TEST_CASE("split D4 model tables") {
    auto model = d4_split_model();
    CHECK(model.verbatim.ef.at({2, 1}) == MPoly::var("b12"));
    CHECK(model.verbatim.v2[0] == MPoly::var("b23"));
    CHECK(verify_complex(model.complex).ok);
    for (auto& [key, row] : model.leibniz.ee) CHECK(row == model.verbatim.ee.at(key));
}

TEST_CASE("D4 relation") {
    MPoly b12 = MPoly::var("b12"), b13 = MPoly::var("b13"), b14 = MPoly::var("b14");
    MPoly b23 = MPoly::var("b23"), b24 = MPoly::var("b24"), b34 = MPoly::var("b34");
    MPoly pf = b12 * b34 - b13 * b24 + b14 * b23;
    CHECK(d4_pfaffian() == pf);
    auto rep = d4_relation_check();
    CHECK(rep.ok);
    CHECK(rep.chosen.found);
    CHECK(rep.chosen.lhs == pf);
    CHECK(rep.chosen.rhs == pf);
}

TEST_CASE("Pfaffian under relabeling of 1, 2, 3") {
    MPoly pf = d4_pfaffian();
    std::vector<int> perm{1, 2, 3};
    do {
        std::array<int, 4> full{perm[0], perm[1], perm[2], 4};
        int sign = permutation_sign({perm[0] - 1, perm[1] - 1, perm[2] - 1});
        CHECK(MPoly(static_cast<long>(sign)) * permute_b_variables(pf, full) == pf);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("q1 coefficients") {
    // r_3 = 1: the d_3 minor is empty, leaving a 2 x 2 minor of d_2
    auto u = q1_coefficient({1, 4, 4, 1}, {1, 2}, {1}, {2});
    CHECK(u.total_degree() == 2);
    PMatrix Q(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) Q(i, j) = MPoly::var("Q" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    bool is_minor = false;
    for (auto& rs : k_subsets(4, 2))
        for (auto& cs : k_subsets(4, 2)) {
            MPoly m = minor(Q, rs, cs);
            is_minor = is_minor || m == u || -m == u;
        }
    CHECK(is_minor);
    CHECK(q1_coefficient({1, 4, 5, 2}, {1, 1}, {1, 2}, {3, 4}).is_zero());
    CHECK_THROWS(q1_coefficient({1, 5, 5, 2}, {1, 2}, {1, 2}, {3, 4}));
    CHECK_THROWS(q1_coefficient({1, 4, 5, 2}, {1, 9}, {1, 2}, {3, 4}));
}

TEST_CASE("q1 symmetry in J and K") {
    auto pt = q1_complex_point({1, 4, 5, 2}, 3);
    CHECK_FALSE(pt.empty());
    auto rep = q1_symmetry_check({1, 4, 5, 2}, 3, 4);
    CHECK(rep.ok);
    CHECK(rep.triples > 0);
    CHECK(rep.antisym_nonzero_generic > 0);
    CHECK(rep.sym_nonzero_on_complex == 0);
}

}
