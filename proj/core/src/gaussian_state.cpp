#include "eitcv/gaussian_state.hpp"

#include "eitcv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace eitcv {
namespace {

constexpr double kSymmetryTolerance = 1e-12;
// Round-off slack for diagonal entries that should be exactly zero.
constexpr double kNegativeVarianceSlack = 1e-12;

void check_labels(const std::vector<ModeLabel>& labels) {
  if (labels.empty()) {
    throw ValidationError("mode label list is empty");
  }
  std::set<std::string_view> seen;
  for (const auto& label : labels) {
    if (label.empty()) {
      throw ValidationError("mode label is empty");
    }
    if (!seen.insert(label).second) {
      throw ValidationError("duplicate mode label '" + label + "'");
    }
  }
}

}  // namespace

GaussianState::GaussianState(std::vector<ModeLabel> labels,
                             Eigen::VectorXd means, Eigen::MatrixXd cov)
    : labels_(std::move(labels)), means_(std::move(means)), cov_(std::move(cov)) {
  check_labels(labels_);
  const auto dim = static_cast<Eigen::Index>(2 * labels_.size());
  if (means_.size() != dim) {
    throw ValidationError("means length does not match 2 x mode count");
  }
  if (cov_.rows() != dim || cov_.cols() != dim) {
    throw ValidationError("covariance is not 2M x 2M");
  }
  if (!means_.allFinite() || !cov_.allFinite()) {
    throw ValidationError("non-finite moment");
  }
  const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() >
      kSymmetryTolerance * scale) {
    throw ValidationError("covariance matrix is not symmetric");
  }
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (cov_(i, i) < -kNegativeVarianceSlack * scale) {
      throw ValidationError("negative variance on covariance diagonal");
    }
    cov_(i, i) = std::max(cov_(i, i), 0.0);
  }
}

bool GaussianState::has_mode(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t GaussianState::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw ValidationError("unknown mode label '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

QuadratureMoments GaussianState::moments(std::string_view label) const {
  const auto i = static_cast<Eigen::Index>(2 * index_of(label));
  return {means_(i), means_(i + 1), cov_(i, i), cov_(i + 1, i + 1),
          cov_(i, i + 1)};
}

double GaussianState::covariance(std::string_view a, int qa,
                                 std::string_view b, int qb) const {
  if (qa < 0 || qa > 1 || qb < 0 || qb > 1) {
    throw ValidationError("quadrature index must be 0 (Q) or 1 (P)");
  }
  const auto i = static_cast<Eigen::Index>(2 * index_of(a)) + qa;
  const auto j = static_cast<Eigen::Index>(2 * index_of(b)) + qb;
  return cov_(i, j);
}

GaussianState make_vacuum(std::vector<ModeLabel> labels) {
  check_labels(labels);
  const auto dim = static_cast<Eigen::Index>(2 * labels.size());
  return GaussianState(std::move(labels), Eigen::VectorXd::Zero(dim),
                       Eigen::MatrixXd::Identity(dim, dim));
}

GaussianState set_mode_moments(const GaussianState& state,
                               std::string_view label,
                               const QuadratureMoments& m) {
  if (!(m.var_q >= 0.0) || !(m.var_p >= 0.0)) {
    throw ValidationError("negative variance for mode '" + std::string(label) +
                          "'");
  }
  const auto i = static_cast<Eigen::Index>(2 * state.index_of(label));
  Eigen::VectorXd means = state.means();
  Eigen::MatrixXd cov = state.cov();
  means(i) = m.mean_q;
  means(i + 1) = m.mean_p;
  cov.row(i).setZero();
  cov.row(i + 1).setZero();
  cov.col(i).setZero();
  cov.col(i + 1).setZero();
  cov(i, i) = m.var_q;
  cov(i + 1, i + 1) = m.var_p;
  cov(i, i + 1) = m.cov_qp;
  cov(i + 1, i) = m.cov_qp;
  return GaussianState(state.labels(), std::move(means), std::move(cov));
}

ModeMap::ModeMap(Eigen::MatrixXcd a_block, Eigen::MatrixXcd b_block)
    : a_(std::move(a_block)), b_(std::move(b_block)) {
  if (a_.rows() == 0 || a_.cols() == 0) {
    throw ValidationError("mode map has an empty block");
  }
  if (a_.rows() != b_.rows() || a_.cols() != b_.cols()) {
    throw ValidationError("mode map blocks differ in shape");
  }
  if (!a_.allFinite() || !b_.allFinite()) {
    throw ValidationError("mode map has non-finite coefficients");
  }
  const auto n = a_.rows();
  const Eigen::MatrixXcd commutator =
      a_ * a_.adjoint() - b_ * b_.adjoint() - Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd pair = a_ * b_.transpose() - b_ * a_.transpose();
  canonical_residual_ =
      std::max(commutator.cwiseAbs().maxCoeff(), pair.cwiseAbs().maxCoeff());
  canonical_ = canonical_residual_ <= kCanonicalTolerance;
}

ModeMap ModeMap::identity(std::size_t modes) {
  const auto n = static_cast<Eigen::Index>(modes);
  return ModeMap(Eigen::MatrixXcd::Identity(n, n),
                 Eigen::MatrixXcd::Zero(n, n));
}

Eigen::MatrixXd ModeMap::quadrature_matrix() const {
  // With a = (Q + iP)/2: Q_out = 2 Re a_out, P_out = 2 Im a_out.
  const Eigen::MatrixXcd sum = a_ + b_;
  const Eigen::MatrixXcd diff = a_ - b_;
  Eigen::MatrixXd s(2 * a_.rows(), 2 * a_.cols());
  for (Eigen::Index j = 0; j < a_.rows(); ++j) {
    for (Eigen::Index k = 0; k < a_.cols(); ++k) {
      s(2 * j, 2 * k) = sum(j, k).real();
      s(2 * j, 2 * k + 1) = -diff(j, k).imag();
      s(2 * j + 1, 2 * k) = sum(j, k).imag();
      s(2 * j + 1, 2 * k + 1) = diff(j, k).real();
    }
  }
  return s;
}

ModeMap compose(const ModeMap& second, const ModeMap& first) {
  if (second.input_modes() != first.output_modes()) {
    throw ValidationError("cannot compose mode maps: dimension mismatch");
  }
  const auto& a2 = second.a_block();
  const auto& b2 = second.b_block();
  const auto& a1 = first.a_block();
  const auto& b1 = first.b_block();
  return ModeMap(a2 * a1 + b2 * b1.conjugate(), a2 * b1 + b2 * a1.conjugate());
}

ModeMap embed(const ModeMap& map, std::span<const std::size_t> positions,
              std::size_t total_modes) {
  if (map.input_modes() != map.output_modes()) {
    throw ValidationError("only square maps can be embedded");
  }
  if (positions.size() != map.input_modes()) {
    throw ValidationError("embedding positions do not match map size");
  }
  std::set<std::size_t> unique(positions.begin(), positions.end());
  if (unique.size() != positions.size() ||
      (!unique.empty() && *unique.rbegin() >= total_modes)) {
    throw ValidationError("embedding positions invalid");
  }
  const auto n = static_cast<Eigen::Index>(total_modes);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t p : positions) {
    a(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) = 0.0;
  }
  for (std::size_t j = 0; j < positions.size(); ++j) {
    for (std::size_t k = 0; k < positions.size(); ++k) {
      const auto r = static_cast<Eigen::Index>(positions[j]);
      const auto c = static_cast<Eigen::Index>(positions[k]);
      a(r, c) = map.a_block()(static_cast<Eigen::Index>(j),
                              static_cast<Eigen::Index>(k));
      b(r, c) = map.b_block()(static_cast<Eigen::Index>(j),
                              static_cast<Eigen::Index>(k));
    }
  }
  return ModeMap(std::move(a), std::move(b));
}

Eigen::MatrixXd symplectic_form(std::size_t modes) {
  const auto n = static_cast<Eigen::Index>(modes);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    omega(2 * j, 2 * j + 1) = 1.0;
    omega(2 * j + 1, 2 * j) = -1.0;
  }
  return omega;
}

MapResult apply_map(const GaussianState& state, const ModeMap& map,
                    std::span<const ModeLabel> in_labels,
                    std::span<const ModeLabel> out_labels) {
  if (in_labels.size() != map.input_modes() ||
      out_labels.size() != map.output_modes()) {
    throw ValidationError("mode map dimensions do not match label lists");
  }
  std::vector<std::size_t> in_index;
  in_index.reserve(in_labels.size());
  for (const auto& label : in_labels) {
    in_index.push_back(state.index_of(label));
  }
  {
    std::set<std::size_t> unique(in_index.begin(), in_index.end());
    if (unique.size() != in_index.size()) {
      throw ValidationError("input labels repeat a mode");
    }
    std::set<std::string_view> out_unique(out_labels.begin(), out_labels.end());
    if (out_unique.size() != out_labels.size()) {
      throw ValidationError("output labels repeat a mode");
    }
  }

  auto is_input = [&](std::string_view label) {
    return std::find(in_labels.begin(), in_labels.end(), label) !=
           in_labels.end();
  };
  auto out_position = [&](std::string_view label) -> std::ptrdiff_t {
    auto it = std::find(out_labels.begin(), out_labels.end(), label);
    return it == out_labels.end() ? -1 : it - out_labels.begin();
  };

  // Each slot of the new state is either an untouched original mode or an
  // output of the map.
  struct Slot {
    bool from_map;
    std::size_t index;  // original mode index, or output index
  };
  std::vector<Slot> slots;
  std::vector<ModeLabel> labels;
  std::vector<bool> output_placed(out_labels.size(), false);
  for (std::size_t m = 0; m < state.mode_count(); ++m) {
    const auto& label = state.labels()[m];
    const auto pos = out_position(label);
    if (is_input(label)) {
      if (pos >= 0) {
        slots.push_back({true, static_cast<std::size_t>(pos)});
        labels.push_back(label);
        output_placed[static_cast<std::size_t>(pos)] = true;
      }
    } else {
      if (pos >= 0) {
        throw ValidationError("output label '" + label +
                              "' collides with an untouched mode");
      }
      slots.push_back({false, m});
      labels.push_back(label);
    }
  }
  for (std::size_t k = 0; k < out_labels.size(); ++k) {
    if (!output_placed[k]) {
      slots.push_back({true, k});
      labels.push_back(out_labels[k]);
    }
  }

  const Eigen::MatrixXd s = map.quadrature_matrix();
  const auto dim_in = static_cast<Eigen::Index>(2 * in_index.size());
  const auto dim_all = static_cast<Eigen::Index>(2 * state.mode_count());

  // Selection of the consumed quadratures out of the full state.
  Eigen::MatrixXd select = Eigen::MatrixXd::Zero(dim_in, dim_all);
  for (std::size_t j = 0; j < in_index.size(); ++j) {
    const auto r = static_cast<Eigen::Index>(2 * j);
    const auto c = static_cast<Eigen::Index>(2 * in_index[j]);
    select(r, c) = 1.0;
    select(r + 1, c + 1) = 1.0;
  }

  // Linear map from the old quadrature vector to the new one.
  const auto dim_new = static_cast<Eigen::Index>(2 * slots.size());
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(dim_new, dim_all);
  const Eigen::MatrixXd s_full = s * select;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(2 * k);
    if (slots[k].from_map) {
      const auto src = static_cast<Eigen::Index>(2 * slots[k].index);
      total.middleRows(r, 2) = s_full.middleRows(src, 2);
    } else {
      const auto c = static_cast<Eigen::Index>(2 * slots[k].index);
      total(r, c) = 1.0;
      total(r + 1, c + 1) = 1.0;
    }
  }

  Eigen::VectorXd means = total * state.means();
  Eigen::MatrixXd cov = total * state.cov() * total.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  Eigen::MatrixXd cross = select * state.cov() * s_full.transpose();

  return {GaussianState(std::move(labels), std::move(means), std::move(cov)),
          std::move(cross)};
}

MapResult apply_map(const GaussianState& state, const ModeMap& map,
                    std::span<const ModeLabel> labels) {
  return apply_map(state, map, labels, labels);
}

}  // namespace eitcv
