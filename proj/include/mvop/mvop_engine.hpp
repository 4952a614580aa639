#pragma once

#include <optional>
#include <vector>

#include "mvop/hermitian_module.hpp"
#include "mvop/representations.hpp"
#include "mvop/types.hpp"

namespace mvop {

struct FamilyOptions {
    // |det L(j)| below singular_tol * prod of row norms is treated as singular.
    double singular_tol = 1e-10;
    // Relative off-band tolerance for the block-tridiagonal check.
    double band_tol = 1e-12;
    // Degree blocks to build; defaults to all blocks the representation supports.
    std::optional<int> degree_blocks;
    // Layouts with a known corner coupling record the off-band part instead of throwing.
    bool allow_band_defect = false;
};

struct RecurrenceBlocks {
    std::vector<CMatrix> A;  // A[0] is zero
    std::vector<CMatrix> B;
    double band_defect = 0.0;  // largest off-band block entry relative to max |P^power|
};

// A_k = (P^power e_k, e_{k-1}), B_k = (P^power e_k, e_k) for k < count.
RecurrenceBlocks recurrence_blocks(const Representation& rep, const BlockBasis& layoutE,
                                   int power, int count);

// Alternant L(j): entry (i, l) = orthonormal p at row tuple(e_0)[i], node tuple(Phi_j)[l].
CMatrix alternant(const Representation& rep, const BlockBasis& layoutE,
                  const BlockBasis& layoutPhi, int j);

struct MVOPFamily {
    Representation rep;
    int n = 1;
    int power = 1;
    BlockBasis layoutE;    // over the rows of the representation
    BlockBasis layoutPhi;  // over the analytic eigen-indices
    int K = 0;             // degree blocks 0..K-1
    int S = 0;             // support blocks 0..S-1
    bool truncated = false;

    std::vector<CMatrix> A;  // k = 0..K-1, A[0] = 0
    std::vector<CMatrix> B;  // k = 0..K-1
    std::vector<CMatrix> Lambda;
    double band_defect = 0.0;

    std::vector<CMatrix> alpha;  // j = 0..S-1
    std::vector<CMatrix> L;
    std::vector<CMatrix> D;
    std::vector<CMatrix> W;
    std::vector<CMatrix> theta;
    std::vector<CMatrix> E0;  // (e_0, Phi_j)

    RMatrix U;  // analytic <k|phi_j> over the rows covered by layoutE blocks 0..K-1

    CMatrix transition(int k, int j) const;  // (e_k, Phi_j)
    CMatrix R(int k, int j) const;
    CMatrix pi_by_alternant(int k, int j) const;
    CMatrix pi_by_recurrence(int k, int j) const;
    // Pi_0(theta_j) .. Pi_{K-1}(theta_j).
    std::vector<CMatrix> pi_sequence(int j) const;
};

MVOPFamily build_family(const Representation& rep, Layout layout, int n, int power,
                        const FamilyOptions& opts = {});

const CMatrix& weight_matrix(const MVOPFamily& fam, int j);
const CMatrix& theta(const MVOPFamily& fam, int j);
CMatrix pi_by_recurrence(const MVOPFamily& fam, int k, int j);
CMatrix pi_by_alternant(const MVOPFamily& fam, int k, int j);

// max_{k,l} |sum_j Pi_k W Pi_l^* - delta_kl I|.
double orthogonality_residual(const MVOPFamily& fam);
// max_{k,m} |sum_j R_k D R_m^* - delta_km I|.
double r_orthogonality_residual(const MVOPFamily& fam);
// |sum_j W(j) - I|.
double weight_sum_residual(const MVOPFamily& fam);
// max_j |L D L^* - E0 E0^*|.
double weight_identity_residual(const MVOPFamily& fam);
// max over (k, j) of |Pi_rec - Pi_alt| / max(1, |Pi_alt|).
double two_path_residual(const MVOPFamily& fam);
// max over (k, j) of the transition-level three-term relation, relative.
double recurrence_residual(const MVOPFamily& fam);
// max_j |spec(theta_j) - diag(alpha_j)| relative to max(1, |alpha_j|).
double theta_similarity_residual(const MVOPFamily& fam);

struct DifferenceResidual {
    double derived_form = 0.0;
    double printed_form = 0.0;
};

DifferenceResidual difference_residual(const MVOPFamily& fam, int k);
DifferenceResidual difference_residual(const MVOPFamily& fam);  // max over k

// Copy with every block matrix conjugated into the signed-operator frame.
MVOPFamily to_signed_frame(const MVOPFamily& fam);

}  // namespace mvop
