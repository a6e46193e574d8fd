#pragma once

/// \file morphisms.hpp
/// Linear maps between matrix spaces, and the checks that matter for ordered
/// *-TROs: ternary *-morphisms, the induced *-homomorphism on the square,
/// sampled complete positivity, compression by a completely positive
/// projection, and the period-2 automorphism of Z + Z^2.

#include <optional>
#include <string>
#include <vector>

#include "otro/random.hpp"
#include "otro/tro.hpp"

namespace otro {

/// A linear map defined on a subspace of M_d with values in M_{d'}. The
/// matrix acts on row-major vectorizations and is (d'^2) x (d^2); only its
/// action on the domain subspace is meaningful.
class LinearMap {
 public:
  LinearMap(Subspace domain, std::size_t codomain_dim, CMatrix matrix);

  /// Builds the matrix by applying f to every matrix unit of M_d.
  template <typename F>
  static LinearMap from_function(Subspace domain, std::size_t codomain_dim, F&& f) {
    const std::size_t d = domain.ambient_dim();
    CMatrix matrix(static_cast<Eigen::Index>(codomain_dim * codomain_dim),
                   static_cast<Eigen::Index>(d * d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        matrix.col(static_cast<Eigen::Index>(i * d + j)) = vec(f(unit(d, i, j)));
      }
    }
    return LinearMap(std::move(domain), codomain_dim, std::move(matrix));
  }

  [[nodiscard]] const Subspace& domain() const { return domain_; }
  [[nodiscard]] std::size_t domain_dim() const { return domain_.ambient_dim(); }
  [[nodiscard]] std::size_t codomain_dim() const { return codomain_dim_; }
  [[nodiscard]] const CMatrix& matrix() const { return matrix_; }

  [[nodiscard]] CMatrix operator()(const CMatrix& x) const;
  /// Blockwise application to an n x n block matrix over M_d.
  [[nodiscard]] CMatrix amplify(const CMatrix& x, std::size_t n) const;
  /// this after other; requires other's codomain to be this map's ambient.
  [[nodiscard]] LinearMap compose_after(const LinearMap& other) const;

 private:
  Subspace domain_;
  std::size_t codomain_dim_;
  CMatrix matrix_;
};

// Common maps on a domain subspace of M_d.
LinearMap identity_map(const Subspace& domain);
LinearMap transpose_map(const Subspace& domain);
LinearMap scalar_map(const Subspace& domain, Complex factor);
/// x -> trace(x) I / d
LinearMap trace_map(const Subspace& domain);
/// x -> V x V*
LinearMap conjugation_map(const Subspace& domain, const CMatrix& v);
/// x -> e x e
LinearMap compression_map(const Subspace& domain, const CMatrix& e);
/// x -> diag(x_11, ..., x_dd)
LinearMap diagonal_expectation(const Subspace& domain);
/// x -> p x p - q x q for complementary projections p, q (a sign flip on the
/// q-summand).
LinearMap sign_flip_map(const Subspace& domain, const CMatrix& p, const CMatrix& q);

bool is_selfadjoint_map(const LinearMap& t, Tolerance tol = {});
/// T[x,y,z] = [Tx,Ty,Tz] and T(x*) = T(x)* over all domain basis triples.
bool is_ternary_star_morphism(const LinearMap& t, Tolerance tol = {});

struct InducedHom {
  LinearMap pi;
  bool well_defined = false;
  bool multiplicative = false;
  bool star_preserving = false;
  /// x* y whose image disagrees with T(x)* T(y), when not well defined.
  std::optional<CMatrix> witness;
};

/// pi(x* y) = T(x)* T(y) on the square of the domain. Throws
/// std::invalid_argument if T is not a ternary *-morphism.
InducedHom induced_hom(const LinearMap& t, Tolerance tol = {});

struct CpVerdict {
  bool refuted = false;
  std::size_t level = 0;               ///< level of the refutation
  std::optional<CMatrix> witness;      ///< positive input at that level
  std::optional<CMatrix> image;        ///< its non-PSD image
  double min_eigenvalue = 0.0;
  std::size_t levels_checked = 0;
};

/// Sampled complete positivity up to `max_level` (<= 4). Positive inputs at
/// level k are b* b with b in M_k(J), J = domain cap domain^2 (the span of
/// the domain's positive cone). When the domain is all of M_d, the Choi
/// block matrix [T(E_ij)]_{i,j<k} is tested deterministically first.
CpVerdict check_completely_positive(const LinearMap& t, std::size_t max_level, Rng& rng,
                                    std::size_t samples_per_level = 24, Tolerance tol = {});
bool is_completely_positive_up_to(const LinearMap& t, std::size_t max_level, Rng& rng,
                                  Tolerance tol = {});

/// Sampled check that T maps positives of the domain to PSD matrices.
bool is_positive(const LinearMap& t, Rng& rng, std::size_t samples = 32, Tolerance tol = {});

struct YoungsonStructure {
  Subspace range;
  /// Spanning set of P(Z_+), given as images of positives of Z.
  Subspace cone_span;
  bool idempotent = false;
  bool completely_positive = false;   ///< sampled, levels 1-2
  bool contractive = false;           ///< sampled, levels 1-2
  bool range_selfadjoint = false;
  bool involutive = false;            ///< [x,y,z]* = [z*,y*,x*] under the new product
  bool associative = false;           ///< ternary associativity laws under the new product
  bool cone_matches = false;          ///< P(Z_+) = range cap Z_+ on samples
};

/// [x,y,z]_P = P(x y* z) on the range of P.
CMatrix compressed_product(const LinearMap& p, const CMatrix& x, const CMatrix& y,
                           const CMatrix& z);

/// Throws std::invalid_argument if P is not idempotent on Z or does not map
/// Z into itself.
YoungsonStructure youngson_compress(const LinearMap& p, const Tro& z, Rng& rng,
                                    std::size_t samples = 16);

struct Period2Automorphism {
  LinearMap theta;        ///< on A = Z + Z^2, theta(z + a) = a - z
  Subspace algebra;       ///< A
  bool multiplicative = false;
  bool star_preserving = false;
  bool involution = false;        ///< theta^2 = id
  bool fixed_space_is_square = false;
  bool negated_space_is_z = false;
};

/// Throws std::domain_error if Z cap Z^2 is nonzero.
Period2Automorphism period2_automorphism(const Tro& z);

}  // namespace otro
