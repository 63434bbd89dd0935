#include "resatlas/schur.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace resatlas {

bool is_partition(const Partition& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0) return false;
        if (i && p[i] > p[i - 1]) return false;
    }
    return true;
}

bool is_dominant(const GLWeight& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] > w[i - 1]) return false;
    return true;
}

Partition trim(const Partition& p) {
    Partition out = p;
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

Partition conjugate(const Partition& p) {
    if (!is_partition(p)) throw std::invalid_argument("conjugate: not a partition");
    Partition c(p.empty() ? 0 : p.front(), 0);
    for (int part : p)
        for (int j = 0; j < part; ++j) ++c[j];
    return c;
}

long long partition_size(const Partition& p) {
    long long s = 0;
    for (int x : p) s += x;
    return s;
}

int parts(const Partition& p) {
    return static_cast<int>(std::count_if(p.begin(), p.end(), [](int x) { return x > 0; }));
}

BigInt schur_dim(const GLWeight& w, int n) {
    if (static_cast<int>(w.size()) != n) throw std::invalid_argument("schur_dim: weight length differs from rank");
    if (!is_dominant(w)) throw std::invalid_argument("schur_dim: weight is not dominant");
    BigInt num = 1, den = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            num *= BigInt(static_cast<long>(w[i] - w[j] + j - i));
            den *= BigInt(static_cast<long>(j - i));
        }
    return num / den;
}

BigInt schur_dim(const GLWeight& w) { return schur_dim(w, static_cast<int>(w.size())); }

std::vector<GLWeight> pieri_add_box(const GLWeight& w) {
    if (!is_dominant(w)) throw std::invalid_argument("pieri_add_box: weight is not dominant");
    std::vector<GLWeight> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && w[i] == w[i - 1]) continue;
        GLWeight v = w;
        ++v[i];
        out.push_back(v);
    }
    return out;
}

BigInt binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

std::vector<Partition> partitions_of(int m, int max_parts, int max_part) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rest, int cap) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) == max_parts) return;
        for (int part = std::min(rest, cap); part >= 1; --part) {
            cur.push_back(part);
            rec(rest - part, part);
            cur.pop_back();
        }
    };
    if (m >= 0) rec(m, max_part < 0 ? m : max_part);
    return out;
}

BigInt g1_dim_formula(int p, int q, int r) { return BigInt(r - 1) * binomial(p + q, p); }

BigInt g2_dim_formula(int p, int q, int r) {
    if (p < 2 || q < 1 || r < 2) throw std::invalid_argument("g2_dim_formula: need p >= 2, q >= 1, r >= 2");
    int rank = p + q;
    BigInt N = binomial(rank, p);
    GLWeight two_p(rank, 0), mixed(rank, 0);
    for (int i = 0; i < p; ++i) two_p[i] = 2;
    for (int i = 0; i < p - 1; ++i) mixed[i] = 2;
    // (2^{p-1}, 1, 1) needs p + 1 rows
    if (p + 1 <= rank) {
        mixed[p - 1] = 1;
        mixed[p] = 1;
    }
    BigInt sym_kernel = binomial(mpz_get_si(N.get_mpz_t()) + 1, 2) - schur_dim(two_p, rank);
    BigInt alt_kernel = binomial(mpz_get_si(N.get_mpz_t()), 2) - (p + 1 <= rank ? schur_dim(mixed, rank) : BigInt(0));
    return binomial(r - 1, 2) * sym_kernel + binomial(r, 2) * alt_kernel;
}

}  // namespace resatlas
