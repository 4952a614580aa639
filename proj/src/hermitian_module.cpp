#include "mvop/hermitian_module.hpp"

#include <sstream>

#include "mvop/errors.hpp"

namespace mvop {

std::string to_string(Layout layout) {
    return layout == Layout::Interleaved ? "interleaved" : "split";
}

const std::vector<int>& BlockBasis::tuple(int k) const {
    if (k < 0 || k >= count) {
        std::ostringstream os;
        os << "block index " << k << " outside 0.." << count - 1;
        throw DomainError(os.str());
    }
    return index_map[static_cast<std::size_t>(k)];
}

BlockBasis make_block_basis(Layout layout, int dim, int n) {
    if (n < 1 || dim < 1) throw ParameterError("block basis needs positive dim and n");
    if (dim % n != 0) {
        std::ostringstream os;
        os << "no free M_" << n << "(C)-basis: " << n << " does not divide dim " << dim;
        throw FreeModuleError(os.str());
    }
    BlockBasis basis;
    basis.layout = layout;
    basis.n = n;
    basis.count = dim / n;
    if (layout == Layout::Interleaved) {
        for (int k = 0; k < basis.count; ++k) {
            std::vector<int> t;
            for (int i = 0; i < n; ++i) t.push_back(n * k + i);
            basis.index_map.push_back(std::move(t));
        }
    } else {
        if (n != 2) throw UnsupportedLayoutError("split layout is defined for n = 2 only");
        for (int k = 0; k < basis.count; ++k) basis.index_map.push_back({k, k + basis.count});
    }
    return basis;
}

CMatrix gram_block(const CMatrix& u, const CMatrix& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        std::ostringstream os;
        os << "gram_block shape mismatch: " << u.rows() << "x" << u.cols() << " vs " << v.rows()
           << "x" << v.cols();
        throw ShapeError(os.str());
    }
    return u.transpose() * v.conjugate();
}

CMatrix act(const CMatrix& A, const CMatrix& u) {
    if (A.rows() != A.cols() || A.cols() != u.cols()) throw ShapeError("action shape mismatch");
    return u * A.transpose();
}

CMatrix basis_element(const BlockBasis& basis, int k, const CMatrix& Q) {
    if (Q.rows() != basis.dim()) throw ShapeError("scalar basis size does not match block basis");
    const auto& t = basis.tuple(k);
    CMatrix e(Q.rows(), basis.n);
    for (int i = 0; i < basis.n; ++i) e.col(i) = Q.col(t[i]);
    return e;
}

CMatrix basis_element(const BlockBasis& basis, int k) {
    const auto& t = basis.tuple(k);
    CMatrix e = CMatrix::Zero(basis.dim(), basis.n);
    for (int i = 0; i < basis.n; ++i) e(t[i], i) = 1.0;
    return e;
}

LiftedOperator::LiftedOperator(CMatrix T, int n) : T_(std::move(T)), n_(n) {
    if (T_.rows() != T_.cols()) throw ShapeError("lifted operator must be square");
    if (n_ < 1) throw ParameterError("lift needs n >= 1");
}

CMatrix LiftedOperator::apply(const CMatrix& u) const {
    if (u.rows() != T_.cols() || u.cols() != n_) throw ShapeError("lifted operator shape mismatch");
    return T_ * u;
}

LiftedOperator LiftedOperator::adjoint() const { return LiftedOperator(T_.adjoint(), n_); }

CMatrix LiftedOperator::dense() const {
    const auto D = T_.rows();
    CMatrix out = CMatrix::Zero(D * n_, D * n_);
    for (int i = 0; i < n_; ++i) out.block(i * D, i * D, D, D) = T_;
    return out;
}

LiftedOperator lift_operator(const CMatrix& T, int n) { return LiftedOperator(T, n); }

CMatrix block_of(const CMatrix& M, const BlockBasis& rows, int k, const BlockBasis& cols, int l) {
    const auto& r = rows.tuple(k);
    const auto& c = cols.tuple(l);
    CMatrix b(rows.n, cols.n);
    for (int i = 0; i < rows.n; ++i)
        for (int m = 0; m < cols.n; ++m) b(i, m) = M(r[i], c[m]);
    return b;
}

}  // namespace mvop
