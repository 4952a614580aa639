#pragma once

#include <string>
#include <vector>

#include "mvop/types.hpp"

namespace mvop {

enum class Layout { Interleaved, Split };

std::string to_string(Layout layout);

// Assigns n scalar-basis indices to each M_n(C)-basis element.
struct BlockBasis {
    Layout layout = Layout::Interleaved;
    int n = 1;
    int count = 0;
    std::vector<std::vector<int>> index_map;

    int dim() const { return n * count; }
    const std::vector<int>& tuple(int k) const;
};

// Interleaved: (nk, ..., nk+n-1). Split (n = 2): (k, k+N+1) with dim = 2(N+1).
BlockBasis make_block_basis(Layout layout, int dim, int n);

// An element of V^n is a D x n matrix whose column i is component i.

// Entry (i, l) = <u_i, v_l>, linear in u and conjugate-linear in v.
CMatrix gram_block(const CMatrix& u, const CMatrix& v);

// A . (v_1..v_n): component i becomes sum_l A_il v_l.
CMatrix act(const CMatrix& A, const CMatrix& u);

// Element whose components are the columns of Q selected by tuple(k).
CMatrix basis_element(const BlockBasis& basis, int k, const CMatrix& Q);
CMatrix basis_element(const BlockBasis& basis, int k);  // unit vectors

// G(T): componentwise action of T on V^n.
class LiftedOperator {
public:
    LiftedOperator(CMatrix T, int n);

    CMatrix apply(const CMatrix& u) const;
    LiftedOperator adjoint() const;
    // Matrix on C^{nD}, components stacked.
    CMatrix dense() const;

    const CMatrix& base() const { return T_; }
    int n() const { return n_; }

private:
    CMatrix T_;
    int n_;
};

LiftedOperator lift_operator(const CMatrix& T, int n);

// Block (k, l) of a scalar operator: entry (i, m) = M[rows.tuple(k)[i], cols.tuple(l)[m]].
CMatrix block_of(const CMatrix& M, const BlockBasis& rows, int k, const BlockBasis& cols, int l);

}  // namespace mvop
