#pragma once

#include <vector>

#include "resatlas/exact.hpp"

namespace resatlas {

// A partition is a weakly decreasing sequence of nonnegative integers; a
// GL-weight is a weakly decreasing integer sequence of fixed length (entries
// may be negative).
using Partition = std::vector<int>;
using GLWeight = std::vector<long long>;

bool is_partition(const Partition& p);
bool is_dominant(const GLWeight& w);
Partition trim(const Partition& p);
Partition conjugate(const Partition& p);
long long partition_size(const Partition& p);
// Number of nonzero parts (the first column length).
int parts(const Partition& p);

// Dimension of the irreducible GL_n-module of highest weight w.
BigInt schur_dim(const GLWeight& w, int n);
BigInt schur_dim(const GLWeight& w);

// Dominant weights reachable by adding 1 to one entry (tensoring with F).
std::vector<GLWeight> pieri_add_box(const GLWeight& w);

BigInt binomial(long long n, long long k);

// All partitions of m with at most `max_parts` parts, each part <= max_part
// (max_part < 0 means unbounded), in reverse lexicographic order.
std::vector<Partition> partitions_of(int m, int max_parts, int max_part = -1);

// dim of g_1 and g_2 in the z_1 grading of g(T_{p,q,r}) from the kernel
// descriptions: g_1 = C^{r-1} (x) wedge^p C^{p+q}, and g_2 as the sum of two
// kernels of the multiplication maps into Schur functors of C^{p+q}.
BigInt g1_dim_formula(int p, int q, int r);
BigInt g2_dim_formula(int p, int q, int r);

}  // namespace resatlas
