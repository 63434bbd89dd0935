#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "resatlas/rings.hpp"

using namespace resatlas;

namespace {

long long part(const Partition& p, int i) { return i <= static_cast<int>(p.size()) ? p[i - 1] : 0; }

// The four weights of the R_a summand, transcribed entry by entry.
GLWeightQuadruple ra_oracle(const MuIndex& m, const ResolutionFormat& fmt) {
    int r0 = fmt.r[0], r1 = fmt.r[1], r2 = fmt.r[2], r3 = fmt.r[3];
    long long e3 = m.a - m.b + m.c, e2 = m.b - m.c;
    GLWeightQuadruple q;
    for (int i = 1; i <= r3 - 1; ++i) q.F3.push_back(e3 + part(m.alpha, i));
    q.F3.push_back(e3);
    for (int i = 1; i <= r2 - 1; ++i) q.F2.push_back(e2 + part(m.beta, i));
    q.F2.push_back(e2);
    q.F2.push_back(-m.a + e2);
    for (int i = r3 - 1; i >= 1; --i) q.F2.push_back(-m.a + e2 - part(m.alpha, i));
    for (int i = 1; i <= r1 - 1; ++i) q.F1.push_back(m.c + part(m.gamma, i));
    q.F1.push_back(m.c);
    q.F1.push_back(m.c - m.b);
    for (int i = r2 - 1; i >= 1; --i) q.F1.push_back(m.c - m.b - part(m.beta, i));
    for (int i = 0; i < r0; ++i) q.F0.push_back(0);
    q.F0.push_back(-m.c);
    for (int i = r1 - 1; i >= 1; --i) q.F0.push_back(-m.c - part(m.gamma, i));
    return q;
}

Partition random_partition(std::mt19937_64& rng, int max_parts, int max_part) {
    std::uniform_int_distribution<int> d(0, max_part);
    Partition p;
    for (int i = 0; i < max_parts; ++i) p.push_back(d(rng));
    std::sort(p.rbegin(), p.rend());
    return trim(p);
}

MuIndex random_mu(std::mt19937_64& rng, const ResolutionFormat& fmt) {
    std::uniform_int_distribution<int> d(0, 3);
    MuIndex m;
    m.a = d(rng), m.b = d(rng), m.c = d(rng);
    m.alpha = random_partition(rng, fmt.r[3] - 1, 3);
    m.beta = random_partition(rng, fmt.r[2] - 1, 3);
    m.gamma = random_partition(rng, fmt.r[1] - 1, 3);
    return m;
}

// Labels read off the arms of T_{p,q,r}, with a placed at z_1.
Weight lambda_oracle(const TpqrGraph& g, const GLWeight& sigma, const GLWeight& tau, long long a) {
    auto T = [&](int i) { return tau.at(i - 1); };
    auto S = [&](int i) { return sigma.at(i - 1); };
    Weight w(g.n, 0);
    w[g.u()] = T(g.p) - T(g.p + 1);
    for (int i = 1; i <= g.p - 1; ++i) w[g.x(i)] = T(g.p - i) - T(g.p - i + 1);
    for (int j = 1; j <= g.q - 1; ++j) w[g.y(j)] = T(g.p + j) - T(g.p + j + 1);
    w[g.z1()] = a;
    for (int i = 1; i <= g.r - 2; ++i) w[g.z(i + 1)] = S(g.r - 1 - i) - S(g.r - i);
    return w;
}

const std::vector<std::vector<int>> kFormats = {{1, 4, 4, 1}, {1, 4, 5, 2}, {2, 6, 5, 1}, {1, 5, 6, 2}, {1, 3, 4, 2}};

}  // namespace

TEST_SUITE("rings") {

TEST_CASE("R_a components for the D4 format") {
    auto fmt = derive_ranks({1, 4, 4, 1});
    MuIndex a1;
    a1.a = 1;
    auto w = ra_component(a1, fmt);
    CHECK(w.F3 == GLWeight{1});
    CHECK(w.F2 == GLWeight{0, 0, 0, -1});
    CHECK(w.F1 == GLWeight{0, 0, 0, 0});
    CHECK(w.F0 == GLWeight{0});
    auto unit = ra_component(MuIndex{}, fmt);
    CHECK(unit.F3 == GLWeight{0});
    CHECK(unit.F2 == GLWeight(4, 0));
    CHECK(unit.F1 == GLWeight(4, 0));
    CHECK(unit.F0 == GLWeight{0});
    MuIndex b1;
    b1.b = 1;
    auto wb = ra_component(b1, fmt);
    CHECK(wb.F3 == GLWeight{-1});
    CHECK(wb.F2 == GLWeight{1, 1, 1, 1});
    CHECK(wb.F1 == GLWeight{0, -1, -1, -1});
    CHECK(wb.F0 == GLWeight{0});
    CHECK(wb.dominant());
}

TEST_CASE("R_a components match the transcribed formula and are dominant") {
    std::mt19937_64 rng(41);
    for (auto& f : kFormats) {
        auto fmt = derive_ranks(f);
        REQUIRE(fmt.valid);
        for (int trial = 0; trial < 60; ++trial) {
            auto mu = random_mu(rng, fmt);
            auto got = ra_component(mu, fmt);
            CHECK(got == ra_oracle(mu, fmt));
            CHECK(got.dominant());
            CHECK(got.F3.size() == static_cast<std::size_t>(f[3]));
            CHECK(got.F2.size() == static_cast<std::size_t>(f[2]));
            CHECK(got.F1.size() == static_cast<std::size_t>(f[1]));
            CHECK(got.F0.size() == static_cast<std::size_t>(f[0]));
        }
    }
}

TEST_CASE("bound violations are rejected") {
    auto fmt = derive_ranks({1, 4, 4, 1});
    MuIndex m;
    m.alpha = {1};  // alpha needs fewer than r_3 = 1 parts
    CHECK_THROWS_AS(ra_component(m, fmt), std::invalid_argument);
    MuIndex neg;
    neg.b = -1;
    CHECK_THROWS_AS(check_mu(neg, fmt), std::invalid_argument);
    MuIndex ok;
    ok.beta = {2, 1};
    CHECK_NOTHROW(check_mu(ok, fmt));
}

TEST_CASE("general length component agrees with the length-3 one") {
    std::mt19937_64 rng(42);
    for (auto& f : kFormats) {
        auto fmt = derive_ranks(f);
        for (int trial = 0; trial < 40; ++trial) {
            auto mu = random_mu(rng, fmt);
            auto w = ra_general_component({mu.c, mu.b, mu.a}, {mu.gamma, mu.beta, mu.alpha}, fmt);
            auto q = ra_component(mu, fmt);
            REQUIRE(w.size() == 4);
            CHECK(w[0] == q.F0);
            CHECK(w[1] == q.F1);
            CHECK(w[2] == q.F2);
            CHECK(w[3] == q.F3);
        }
        auto zero = ra_general_component({0, 0, 0}, {{}, {}, {}}, fmt);
        for (std::size_t i = 0; i < zero.size(); ++i) CHECK(zero[i] == GLWeight(f[i], 0));
    }
}

TEST_CASE("length-2 components") {
    // F_0 <- F_1 <- F_2 with ranks (1, 3, 2): r = (0, 1, 2).
    auto fmt = derive_ranks({1, 3, 2});
    REQUIRE(fmt.valid);
    auto w = ra_general_component({0, 1}, {{}, {1}}, fmt);
    REQUIRE(w.size() == 3);
    CHECK(w[2] == GLWeight{2, 1});
    CHECK(w[1] == GLWeight{0, -1, -2});
    CHECK(w[0] == GLWeight{0});
    for (auto& x : w) CHECK(is_dominant(x));
}

TEST_CASE("enumerated truncations are multiplicity free") {
    for (auto& f : kFormats) {
        auto fmt = derive_ranks(f);
        auto rows = ra_enumerate(fmt, 3);
        std::set<GLWeightQuadruple> all;
        std::set<std::pair<GLWeight, GLWeight>> even, odd;
        for (auto& row : rows) {
            all.insert(row.weights);
            even.insert({row.weights.F2, row.weights.F0});
            odd.insert({row.weights.F3, row.weights.F1});
            CHECK(row.mu.total() <= 3);
        }
        CHECK(all.size() == rows.size());
        CHECK(even.size() == rows.size());
        CHECK(odd.size() == rows.size());
    }
    auto unit = ra_enumerate(derive_ranks({1, 4, 4, 1}), 0);
    REQUIRE(unit.size() == 1);
    CHECK(unit[0].mu == MuIndex{});
}

TEST_CASE("sextuples of fixed total") {
    auto fmt = derive_ranks({1, 4, 4, 1});
    // only the integers and a beta with at most two parts can be nonzero
    CHECK(mu_with_total(fmt, 0).size() == 1);
    CHECK(mu_with_total(fmt, 1).size() == 4);
    CHECK(mu_with_total(fmt, 2).size() == 11);
}

TEST_CASE("homology of the generic complex") {
    auto fmt = derive_ranks({1, 4, 4, 1});
    auto h = homology_weights(fmt, 2, 3);
    CHECK_FALSE(h.weights.empty());
    CHECK(h.generator_is_wedge);
    REQUIRE(h.generator.size() == 4);
    CHECK(h.generator[1].size() == 4);
    CHECK(homology_weights(fmt, 3, 4).weights.empty());
    CHECK(homology_weights(fmt, 4, 4).weights.empty());
    CHECK(homology_weights(fmt, 2, 0).weights.empty());
    CHECK_THROWS_AS(homology_weights(fmt, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(homology_weights(fmt, 5, 3), std::invalid_argument);
    for (auto& w : h.weights)
        for (auto& part : w) CHECK(is_dominant(part));
}

TEST_CASE("dictionary weights") {
    auto fmt = derive_ranks({1, 4, 4, 1});
    auto g = TpqrGraph::make(2, 2, 2);
    MuIndex m;
    m.a = 2, m.b = 3, m.c = 1, m.beta = {4, 1};
    auto rs = rspec_component(m, fmt);
    CHECK(rs.lambda[g.x(1)] == 3);
    CHECK(rs.lambda[g.u()] == 1);
    CHECK(rs.lambda[g.y(1)] == 3);
    CHECK(rs.lambda[g.z1()] == 2);
    auto zero = rspec_component(MuIndex{}, fmt);
    CHECK(zero.lambda == Weight(4, 0));
    CHECK(zero.sigma == GLWeight{0});
    CHECK(zero.tau == GLWeight(4, 0));
}

TEST_CASE("dictionary agrees with the arm-by-arm oracle and round-trips") {
    std::mt19937_64 rng(43);
    for (auto& f : kFormats) {
        auto fmt = derive_ranks(f);
        auto g = TpqrGraph::make(fmt.p(), fmt.q(), fmt.rr());
        for (int trial = 0; trial < 40; ++trial) {
            auto mu = random_mu(rng, fmt);
            auto rs = rspec_component(mu, fmt);
            auto q = ra_component(mu, fmt);
            CHECK(rs.sigma == q.F3);
            CHECK(rs.tau == q.F1);
            CHECK(rs.theta == q.F2);
            CHECK(rs.phi == q.F0);
            CHECK(rs.lambda == lambda_oracle(g, rs.sigma, rs.tau, mu.a));
            CHECK(rs.lambda == kstar_lambda(g, rs.sigma, rs.tau, mu.a));
            bool dominant = true;
            for (auto v : rs.lambda) dominant = dominant && v >= 0;
            CHECK(dominant);
            long long last = mu.c - mu.b - part(mu.beta, 1);
            CHECK(tau_from_lambda(g, rs.lambda, last) == rs.tau);
        }
    }
}

TEST_CASE("A-type dictionary") {
    // q = 1: format (p-1, p+1, r+1, r-1)
    auto fmt = derive_ranks({1, 3, 4, 2});
    REQUIRE(fmt.q() == 1);
    auto g = TpqrGraph::make(fmt.p(), fmt.q(), fmt.rr());
    MuIndex m;
    m.a = 1, m.b = 2, m.c = 1, m.alpha = {1};
    auto rs = rspec_component(m, fmt);
    CHECK(rs.tau.size() == 3);
    CHECK(rs.lambda[g.u()] == rs.tau[1] - rs.tau[2]);
    CHECK(rs.lambda[g.x(1)] == rs.tau[0] - rs.tau[1]);
    CHECK(rs.lambda[g.z1()] == 1);
    CHECK(rs.lambda[g.z(2)] == rs.sigma[0] - rs.sigma[1]);
}

TEST_CASE("semigroup generators") {
    auto d4 = semigroup_generators(derive_ranks({1, 4, 4, 1}));
    REQUIRE(d4.size() == 6);
    CHECK(d4[0].members.empty());
    CHECK_FALSE(d4[0].note.empty());
    CHECK(d4[1].members.size() == 1);
    CHECK(d4[2].members.size() == 2);
    CHECK(d4[3].members.size() == 1);
    CHECK(d4[4].members.empty());
    REQUIRE(d4[5].members.size() == 1);
    MuIndex c1;
    c1.c = 1;
    CHECK(d4[5].members[0] == c1);
    for (int i = 0; i < 6; ++i) CHECK(d4[i].number == i + 1);

    for (int r3 = 2; r3 <= 5; ++r3) {
        auto gens = semigroup_generators(derive_ranks({1, 3, r3 + 2, r3}));
        REQUIRE(gens[0].members.size() == static_cast<std::size_t>(r3 - 1));
        for (int i = 1; i <= r3 - 1; ++i) CHECK(gens[0].members[i - 1].alpha == Partition(i, 1));
        CHECK(gens[5].members.size() == 1);
    }
}

TEST_CASE("K* terms") {
    auto fmt = derive_ranks({1, 4, 4, 1});
    auto k = kstar_terms({0}, {0, 0, 0, 0}, 1, fmt);
    CHECK(k.u == 1);
    CHECK(k.bottom.sigma == GLWeight{0});
    CHECK(k.bottom.tau == GLWeight(4, 0));
    CHECK(k.middle.sigma == GLWeight{1});
    CHECK(k.middle.tau == GLWeight{1, 1, 0, 0});
    CHECK(k.top.size() == 1);

    auto fmt2 = derive_ranks({1, 4, 5, 2});
    auto k2 = kstar_terms({0, 0}, {0, 0, 0, 0}, 3, fmt2);
    CHECK(k2.s == 1);
    CHECK(k2.u == 1);
    CHECK(k2.top.size() == 2);
    CHECK(k2.middle.sigma == GLWeight{3, 0});
    CHECK(k2.middle.tau == GLWeight{3, 3, 0, 0});
    // the defining equations for s and u
    auto k3 = kstar_terms({4, 1}, {5, 3, 2, -1}, 2, fmt2);
    CHECK(k3.s == 4);
    CHECK(k3.u == 2);
    CHECK_THROWS_AS(kstar_terms({0, 1}, {0, 0, 0, 0}, 1, fmt2), std::invalid_argument);
    CHECK_THROWS_AS(kstar_terms({0, 0}, {0, 0, 0, 0}, 0, fmt2), std::invalid_argument);
}

TEST_CASE("K* terms match the BGG layers") {
    CHECK(dictionary_crosscheck({0}, {0, 0, 0, 0}, 1, derive_ranks({1, 4, 4, 1})).ok);
    auto fmt = derive_ranks(format_for_pqr(3, 3, 2));
    std::mt19937_64 rng(44);
    std::uniform_int_distribution<int> d(0, 3), dt(1, 3);
    for (int trial = 0; trial < 20; ++trial) {
        GLWeight sigma(fmt.r[3]), tau(fmt.r[1] + fmt.r[2]);
        for (auto& v : sigma) v = d(rng);
        for (auto& v : tau) v = d(rng);
        std::sort(sigma.rbegin(), sigma.rend());
        std::sort(tau.rbegin(), tau.rend());
        CHECK(dictionary_crosscheck(sigma, tau, dt(rng), fmt).ok);
    }
    auto fmt2 = derive_ranks({1, 4, 5, 2});
    CHECK(dictionary_crosscheck({2, 1}, {3, 1, 1, 0}, 2, fmt2).ok);
    CHECK_FALSE(dictionary_crosscheck({0}, {0, 0, 0, 0}, 1, derive_ranks({1, 4, 4, 1}), 1).ok);
}

TEST_CASE("Hilbert function cells") {
    auto cells = hilbert_truncation(derive_ranks({1, 4, 4, 1}), 1);
    std::map<std::vector<long long>, BigInt> by;
    for (auto& c : cells) by[c.multidegree] = c.dim;
    CHECK(by.at({0, 0, 0, 0, 0, 0}) == 1);
    CHECK(by.at({1, 0, 0, 0, 0, 0}) == 32);
    CHECK(by.at({0, 1, 0, 0, 0, 0}) == 8);
    CHECK(by.at({0, 0, 1, 0, 0, 0}) == 1);
    CHECK_THROWS_AS(hilbert_truncation(derive_ranks(format_for_pqr(3, 3, 3)), 1), std::invalid_argument);
}

}
