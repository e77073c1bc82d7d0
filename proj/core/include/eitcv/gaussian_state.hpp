#pragma once

// First- and second-moment representation of multimode bosonic states.
//
// Quadratures follow Q = a + a^+, P = i(a^+ - a), so the vacuum has unit
// variance in both. Means and covariance are ordered Q1, P1, ..., QM, PM.
// Linear mode maps act on annihilation operators as
//     a_out = A a_in + B a_in^+
// and are turned into real 2M_out x 2M_in matrices on the quadratures.

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eitcv {

using ModeLabel = std::string;

// Moments of a single mode: <Q>, <P>, Var Q, Var P and the symmetrized
// covariance (<QP + PQ>/2 - <Q><P>).
struct QuadratureMoments {
  double mean_q = 0.0;
  double mean_p = 0.0;
  double var_q = 1.0;
  double var_p = 1.0;
  double cov_qp = 0.0;

  static QuadratureMoments vacuum() { return {}; }
  static QuadratureMoments coherent(double mean_q, double mean_p) {
    return {mean_q, mean_p, 1.0, 1.0, 0.0};
  }
};

class GaussianState {
 public:
  // Validates: nonempty distinct labels, matching dimensions, symmetric cov
  // (to 1e-12 relative, then stored exactly symmetric), nonnegative diagonal.
  GaussianState(std::vector<ModeLabel> labels, Eigen::VectorXd means,
                Eigen::MatrixXd cov);

  const std::vector<ModeLabel>& labels() const { return labels_; }
  std::size_t mode_count() const { return labels_.size(); }
  const Eigen::VectorXd& means() const { return means_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

  bool has_mode(std::string_view label) const;
  // Throws ValidationError for an unknown label.
  std::size_t index_of(std::string_view label) const;

  QuadratureMoments moments(std::string_view label) const;
  // Symmetrized covariance between quadrature `qa` of mode a and `qb` of
  // mode b; quadrature index 0 is Q and 1 is P.
  double covariance(std::string_view a, int qa, std::string_view b,
                    int qb) const;

 private:
  std::vector<ModeLabel> labels_;
  Eigen::VectorXd means_;
  Eigen::MatrixXd cov_;
};

GaussianState make_vacuum(std::vector<ModeLabel> labels);

// Replaces the mean and 2x2 block of one mode and zeroes its covariances
// with every other mode.
GaussianState set_mode_moments(const GaussianState& state,
                               std::string_view label,
                               const QuadratureMoments& moments);

class ModeMap {
 public:
  ModeMap(Eigen::MatrixXcd a_block, Eigen::MatrixXcd b_block);

  static ModeMap identity(std::size_t modes);

  const Eigen::MatrixXcd& a_block() const { return a_; }
  const Eigen::MatrixXcd& b_block() const { return b_; }
  std::size_t output_modes() const {
    return static_cast<std::size_t>(a_.rows());
  }
  std::size_t input_modes() const {
    return static_cast<std::size_t>(a_.cols());
  }

  // Certificate computed at construction: A A^H - B B^H = I and
  // A B^T - B A^T = 0 entrywise within 1e-12, i.e. the output operators obey
  // bosonic commutation relations.
  bool canonical() const { return canonical_; }
  double canonical_residual() const { return canonical_residual_; }

  // Real 2M_out x 2M_in matrix S with X_out = S X_in.
  Eigen::MatrixXd quadrature_matrix() const;

 private:
  Eigen::MatrixXcd a_;
  Eigen::MatrixXcd b_;
  double canonical_residual_ = 0.0;
  bool canonical_ = false;
};

inline constexpr double kCanonicalTolerance = 1e-12;

// `second` applied after `first`. Dimensions must chain.
ModeMap compose(const ModeMap& second, const ModeMap& first);

// Lifts a map on k modes to `total_modes` modes: input/output j of `map`
// sits at position positions[j]; all other modes pass through unchanged.
ModeMap embed(const ModeMap& map, std::span<const std::size_t> positions,
              std::size_t total_modes);

// Block-diagonal antisymmetric form with [[0, 1], [-1, 0]] per mode.
Eigen::MatrixXd symplectic_form(std::size_t modes);

struct MapResult {
  GaussianState state;
  // Covariances between the input quadratures of `in_labels` (rows, in the
  // order given) and the output quadratures of `out_labels` (columns).
  Eigen::MatrixXd cross_cov;
};

// Applies `map` to the modes `in_labels`, producing modes `out_labels`.
// Resulting mode order: original order with consumed inputs dropped, except
// that an output reusing an input label takes that input's slot; remaining
// new outputs are appended. Untouched modes are carried through.
MapResult apply_map(const GaussianState& state, const ModeMap& map,
                    std::span<const ModeLabel> in_labels,
                    std::span<const ModeLabel> out_labels);

// Convenience overload for square maps acting in place.
MapResult apply_map(const GaussianState& state, const ModeMap& map,
                    std::span<const ModeLabel> labels);

}  // namespace eitcv
