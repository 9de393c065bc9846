#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "goh/pfaffian.hpp"
#include "goh/random.hpp"
#include "goh/vector_field.hpp"

namespace goh {

// H = [h^{ij}] with h^{ij} = p . [X^i, X^j]. For a corank-one frame also
// the reduced matrix with H = p_n * reduced identically.
struct GohMatrix {
  SkewMatrix<Polynomial> full;
  std::optional<SkewMatrix<Polynomial>> reduced;
};

GohMatrix goh_matrix(const Frame& frame);

// A covector point (x, p) of the cotangent bundle.
struct PhasePoint {
  std::vector<Rational> x;
  std::vector<Rational> p;
  std::vector<Rational> joined() const;
};

// m - rank H(x, p). Throws ConstraintViolation unless p != 0 and
// p . X^i(x) = 0 for every i.
std::size_t kernel_dim_at(const Frame& frame, const GohMatrix& goh, const PhasePoint& point);
std::size_t kernel_dim_at(const Frame& frame, const PhasePoint& point);

// Random exact point of the annihilator over x with coordinates k/den in
// [-bound, bound]. Corank one: p = p_n (-A(x), 1); otherwise p is a random
// combination of an exact nullspace basis of [X^i(x)]. Returns nullopt when
// the fields happen to be dependent at x.
std::optional<PhasePoint> random_annihilator_point(const Frame& frame, Rng& rng, long bound = 1, long den = 16);

// Rank of H over the fraction field: exact Pfaffian minors of the reduced
// matrix in corank one, otherwise the largest exact rank over a fixed-seed
// batch of annihilator points.
std::size_t generic_goh_rank(const Frame& frame, const GohMatrix& goh);

struct AbnormalGenerator {
  IndexSet set;
  std::size_t rank = 0;  // r, with |set| = r + 1
  // Y_I = sum_{j in I} eps(I,j) phi(H, I\{j}) hvec^j on phase space.
  VectorField y;
  std::vector<Polynomial> coefficients;  // eps(I,j) phi(H, I\{j}), j in I
  // Corank one: Z_I = sum_{i in I} eps(I,i) phi~_{I\{i}}(x) X^i and its
  // frame coefficients (length m).
  std::optional<VectorField> z;
  std::vector<Polynomial> frame_coefficients;
  BlockDegrees degrees;
};

// One generator per I in Lambda_{r+1}. Attaches Z when the frame is in
// corank-one normal form.
std::vector<AbnormalGenerator> abnormal_generators(const Frame& frame, const GohMatrix& goh, std::size_t r);

// Strips p_n^{r/2} from the Pfaffian coefficients of Y and returns Z.
// Verifies that the x-block of Y restricted to p = p_n (-A, 1) equals
// p_n^{r/2} Z. Throws StructuralError without a corank-one normal form.
VectorField project_corank1(const AbnormalGenerator& generator, const Frame& frame, const GohMatrix& goh);

struct BaseCombination {
  // div Z = constant * sum_{j in I} d_{x_n}(A_j) Z(x_j); nullopt when that sum
  // vanishes identically and the combination is trivially zero.
  std::optional<Rational> constant;
  std::vector<Polynomial> coefficients;  // c_j for j in I
  Polynomial divergence;
  Polynomial residual;
};

struct DivergenceCertificate {
  IndexSet subject;
  std::size_t rank = 0;
  Polynomial phase_divergence;
  Polynomial jacobi_expansion;
  std::optional<BaseCombination> base;
  bool valid() const;
};

// Ordering of the triple bracket in the Jacobi expansion.
inline constexpr const char* kTripleBracketConvention = "{h^j,{h^k,h^l}}";

// Builds the certificate and throws CertificateFailure naming the first
// nonzero residual.
DivergenceCertificate divergence_certificate(const AbnormalGenerator& generator, const Frame& frame,
                                             const GohMatrix& goh);
// Same computation without throwing.
DivergenceCertificate compute_divergence_certificate(const AbnormalGenerator& generator, const Frame& frame,
                                                     const GohMatrix& goh);

// Reduced Pfaffian minors phi~_I(x), I in Lambda_r; their common zero set is
// where the reduced rank drops below r. Requires a corank-one frame.
std::vector<std::pair<IndexSet, Polynomial>> singular_set_equations(const Frame& frame, const GohMatrix& goh,
                                                                     std::size_t r);

}  // namespace goh
