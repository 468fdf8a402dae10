// Copyright 2026 The qpip-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpip/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qpip/config.hpp"

namespace qpip {
namespace {

std::vector<std::size_t> strides_of(const std::vector<std::uint32_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) {
    s[i - 1] = s[i] * dims[i];
  }
  return s;
}

// Offsets for addressing a subset of sites: `block` enumerates the joint
// index of the target sites (first site most significant), `rest` enumerates
// everything else.
struct SiteView {
  std::vector<std::size_t> block_offsets;
  std::vector<std::size_t> rest_offsets;
};

SiteView make_view(const SubsystemLayout& layout,
                   const std::vector<std::size_t>& sites) {
  const auto& dims = layout.dims;
  std::set<std::size_t> target(sites.begin(), sites.end());
  if (target.size() != sites.size()) {
    throw ConfigError("operator site list contains duplicates");
  }
  for (auto s : sites) {
    if (s >= dims.size()) throw ConfigError("operator site out of range");
  }
  const auto strides = strides_of(dims);

  SiteView view;
  view.block_offsets.assign(1, 0);
  for (auto s : sites) {
    std::vector<std::size_t> next;
    next.reserve(view.block_offsets.size() * dims[s]);
    for (auto base : view.block_offsets) {
      for (std::uint32_t v = 0; v < dims[s]; ++v) {
        next.push_back(base + v * strides[s]);
      }
    }
    view.block_offsets = std::move(next);
  }
  view.rest_offsets.assign(1, 0);
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (target.count(s)) continue;
    std::vector<std::size_t> next;
    next.reserve(view.rest_offsets.size() * dims[s]);
    for (auto base : view.rest_offsets) {
      for (std::uint32_t v = 0; v < dims[s]; ++v) {
        next.push_back(base + v * strides[s]);
      }
    }
    view.rest_offsets = std::move(next);
  }
  return view;
}

std::size_t block_dim_of(const SubsystemLayout& layout,
                         const std::vector<std::size_t>& sites) {
  std::size_t d = 1;
  for (auto s : sites) d *= layout.dims[s];
  return d;
}

void check_norm(const Eigen::VectorXcd& amp) {
  if (std::abs(amp.norm() - 1.0) > kTol) {
    throw InvariantError("state norm drifted beyond tolerance");
  }
}

}  // namespace

std::size_t SubsystemLayout::total_dim() const {
  std::size_t d = 1;
  for (auto dim : dims) {
    if (dim < 2) throw ConfigError("subsystem dimension must be >= 2");
    d *= dim;
    if (d > kMaxStateDim) {
      throw ResourceError("total state dimension exceeds guard");
    }
  }
  return d;
}

bool operator==(const SubsystemLayout& a, const SubsystemLayout& b) {
  return a.dims == b.dims;
}

QuditState QuditState::basis(SubsystemLayout layout,
                             const std::vector<std::uint32_t>& digits) {
  QuditState s;
  const std::size_t dim = layout.total_dim();
  s.layout_ = std::move(layout);
  s.amp_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  s.amp_[static_cast<Eigen::Index>(s.index_of(digits))] = 1.0;
  return s;
}

QuditState QuditState::from_amplitudes(SubsystemLayout layout,
                                       Eigen::VectorXcd amplitudes) {
  const std::size_t dim = layout.total_dim();
  if (static_cast<std::size_t>(amplitudes.size()) != dim) {
    throw ConfigError("amplitude vector length does not match layout");
  }
  check_norm(amplitudes);
  QuditState s;
  s.layout_ = std::move(layout);
  s.amp_ = std::move(amplitudes);
  return s;
}

std::size_t QuditState::index_of(
    const std::vector<std::uint32_t>& digits) const {
  if (digits.size() != layout_.dims.size()) {
    throw ConfigError("digit string length does not match layout");
  }
  std::size_t idx = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= layout_.dims[i]) throw ConfigError("digit out of range");
    idx = idx * layout_.dims[i] + digits[i];
  }
  return idx;
}

std::string QuditState::dump_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  bool first = true;
  for (Eigen::Index i = 0; i < amp_.size(); ++i) {
    if (std::abs(amp_[i]) <= 1e-12) continue;
    if (!first) os << ",";
    first = false;
    os << "[" << i << "," << amp_[i].real() << "," << amp_[i].imag() << "]";
  }
  os << "]";
  return os.str();
}

QuditState apply(const QuditState& state, const LocalOperator& op) {
  const std::size_t bd = block_dim_of(state.layout(), op.sites);
  if (static_cast<std::size_t>(op.matrix.rows()) != bd ||
      static_cast<std::size_t>(op.matrix.cols()) != bd) {
    throw ConfigError("operator matrix dimension does not match sites");
  }
  if (op.unitary_flag) {
    const Eigen::MatrixXcd gram = op.matrix.adjoint() * op.matrix;
    if ((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).norm() >
        kTol * double(bd)) {
      throw InvariantError("operator flagged unitary is not unitary");
    }
  }
  const SiteView view = make_view(state.layout(), op.sites);
  Eigen::VectorXcd out = state.amplitudes();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(bd));
  for (auto rest : view.rest_offsets) {
    for (std::size_t k = 0; k < bd; ++k) {
      v[static_cast<Eigen::Index>(k)] =
          state.amplitudes()[static_cast<Eigen::Index>(
              rest + view.block_offsets[k])];
    }
    Eigen::VectorXcd w = op.matrix * v;
    for (std::size_t k = 0; k < bd; ++k) {
      out[static_cast<Eigen::Index>(rest + view.block_offsets[k])] =
          w[static_cast<Eigen::Index>(k)];
    }
  }
  if (op.unitary_flag) check_norm(out);
  return QuditState::from_amplitudes(state.layout(), std::move(out));
}

std::pair<QuditState, double> apply_contraction(const QuditState& state,
                                                const LocalOperator& op) {
  LocalOperator raw = op;
  raw.unitary_flag = false;
  const std::size_t bd = block_dim_of(state.layout(), raw.sites);
  if (static_cast<std::size_t>(raw.matrix.rows()) != bd ||
      static_cast<std::size_t>(raw.matrix.cols()) != bd) {
    throw ConfigError("operator matrix dimension does not match sites");
  }
  const SiteView view = make_view(state.layout(), raw.sites);
  Eigen::VectorXcd out = state.amplitudes();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(bd));
  for (auto rest : view.rest_offsets) {
    for (std::size_t k = 0; k < bd; ++k) {
      v[static_cast<Eigen::Index>(k)] =
          state.amplitudes()[static_cast<Eigen::Index>(
              rest + view.block_offsets[k])];
    }
    Eigen::VectorXcd w = raw.matrix * v;
    for (std::size_t k = 0; k < bd; ++k) {
      out[static_cast<Eigen::Index>(rest + view.block_offsets[k])] =
          w[static_cast<Eigen::Index>(k)];
    }
  }
  const double weight = out.squaredNorm();
  if (weight < kTol) {
    throw InvariantError("contraction annihilated the state");
  }
  out /= std::sqrt(weight);
  return {QuditState::from_amplitudes(state.layout(), std::move(out)), weight};
}

double projection_weight(const QuditState& state, const Projector& p) {
  const std::size_t bd = block_dim_of(state.layout(), p.sites);
  for (std::size_t i = 0; i < p.basis.size(); ++i) {
    if (static_cast<std::size_t>(p.basis[i].size()) != bd) {
      throw ConfigError("projector basis vector dimension mismatch");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex g = p.basis[j].dot(p.basis[i]);
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - expect) > 1e-7) {
        throw ConfigError("projector basis is not orthonormal");
      }
    }
  }
  const SiteView view = make_view(state.layout(), p.sites);
  double weight = 0.0;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(bd));
  for (auto rest : view.rest_offsets) {
    for (std::size_t k = 0; k < bd; ++k) {
      v[static_cast<Eigen::Index>(k)] =
          state.amplitudes()[static_cast<Eigen::Index>(
              rest + view.block_offsets[k])];
    }
    for (const auto& b : p.basis) {
      weight += std::norm(b.dot(v));
    }
  }
  return weight;
}

MeasureResult measure_projector(const QuditState& state, const Projector& p,
                                RandomStream& rng) {
  const std::size_t bd = block_dim_of(state.layout(), p.sites);
  const SiteView view = make_view(state.layout(), p.sites);
  Eigen::VectorXcd projected =
      Eigen::VectorXcd::Zero(state.amplitudes().size());
  double weight = 0.0;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(bd));
  for (auto rest : view.rest_offsets) {
    for (std::size_t k = 0; k < bd; ++k) {
      v[static_cast<Eigen::Index>(k)] =
          state.amplitudes()[static_cast<Eigen::Index>(
              rest + view.block_offsets[k])];
    }
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(bd));
    for (const auto& b : p.basis) {
      w += b.dot(v) * b;
    }
    weight += w.squaredNorm();
    for (std::size_t k = 0; k < bd; ++k) {
      projected[static_cast<Eigen::Index>(rest + view.block_offsets[k])] =
          w[static_cast<Eigen::Index>(k)];
    }
  }
  if (weight < -kTol || weight > 1.0 + kTol) {
    throw InvariantError("projection probability outside [0,1]");
  }
  const double prob = std::clamp(weight, 0.0, 1.0);
  const bool outcome = rng.bernoulli(prob);
  Eigen::VectorXcd post =
      outcome ? projected
              : Eigen::VectorXcd(state.amplitudes() - projected);
  const double post_norm = post.norm();
  if (post_norm < kTol) {
    throw InvariantError("measurement produced a null branch");
  }
  post /= post_norm;
  return {outcome, QuditState::from_amplitudes(state.layout(), std::move(post)),
          weight};
}

std::pair<std::uint32_t, QuditState> measure_site(const QuditState& state,
                                                  std::size_t site,
                                                  RandomStream& rng) {
  const auto& dims = state.layout().dims;
  if (site >= dims.size()) throw ConfigError("measured site out of range");
  const auto strides = strides_of(dims);
  const std::uint32_t d = dims[site];
  std::vector<double> probs(d, 0.0);
  const auto& amp = state.amplitudes();
  for (Eigen::Index i = 0; i < amp.size(); ++i) {
    const std::uint32_t digit =
        static_cast<std::uint32_t>((static_cast<std::size_t>(i) /
                                    strides[site]) % d);
    probs[digit] += std::norm(amp[i]);
  }
  double r = rng.uniform_real();
  std::uint32_t outcome = d - 1;
  for (std::uint32_t v = 0; v < d; ++v) {
    if (r < probs[v]) {
      outcome = v;
      break;
    }
    r -= probs[v];
  }
  Eigen::VectorXcd post = Eigen::VectorXcd::Zero(amp.size());
  for (Eigen::Index i = 0; i < amp.size(); ++i) {
    const std::uint32_t digit =
        static_cast<std::uint32_t>((static_cast<std::size_t>(i) /
                                    strides[site]) % d);
    if (digit == outcome) post[i] = amp[i];
  }
  const double n = post.norm();
  if (n < kTol) throw InvariantError("measurement branch has zero weight");
  post /= n;
  return {outcome,
          QuditState::from_amplitudes(state.layout(), std::move(post))};
}

QuditState drop_site(const QuditState& state, std::size_t site,
                     std::uint32_t value) {
  const auto& dims = state.layout().dims;
  if (site >= dims.size()) throw ConfigError("dropped site out of range");
  const auto strides = strides_of(dims);
  const std::uint32_t d = dims[site];
  SubsystemLayout new_layout;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i == site) continue;
    new_layout.dims.push_back(dims[i]);
    if (i < state.layout().labels.size()) {
      new_layout.labels.push_back(state.layout().labels[i]);
    }
  }
  const std::size_t new_dim = state.layout().total_dim() / d;
  Eigen::VectorXcd out(static_cast<Eigen::Index>(new_dim));
  const auto& amp = state.amplitudes();
  double residual = 0.0;
  std::size_t out_i = 0;
  for (Eigen::Index i = 0; i < amp.size(); ++i) {
    const std::uint32_t digit =
        static_cast<std::uint32_t>((static_cast<std::size_t>(i) /
                                    strides[site]) % d);
    if (digit == value) {
      out[static_cast<Eigen::Index>(out_i++)] = amp[i];
    } else {
      residual += std::norm(amp[i]);
    }
  }
  if (residual > kTol) {
    throw InvariantError("dropped site is not in a definite basis state");
  }
  const double n = out.norm();
  out /= n;
  return QuditState::from_amplitudes(std::move(new_layout), std::move(out));
}

double fidelity(const QuditState& a, const QuditState& b) {
  return std::norm(inner(a, b));
}

Complex inner(const QuditState& a, const QuditState& b) {
  if (!(a.layout() == b.layout())) {
    throw ConfigError("fidelity/inner requires matching layouts");
  }
  return a.amplitudes().dot(b.amplitudes());
}

QuditState embed_product(const std::vector<QuditState>& states) {
  if (states.empty()) throw ConfigError("empty tensor product");
  SubsystemLayout layout;
  std::size_t dim = 1;
  for (const auto& s : states) {
    layout.dims.insert(layout.dims.end(), s.layout().dims.begin(),
                       s.layout().dims.end());
    layout.labels.insert(layout.labels.end(), s.layout().labels.begin(),
                         s.layout().labels.end());
    dim *= s.layout().total_dim();
    if (dim > kMaxStateDim) {
      throw ResourceError("tensor product exceeds dimension guard");
    }
  }
  Eigen::VectorXcd amp = states[0].amplitudes();
  for (std::size_t i = 1; i < states.size(); ++i) {
    const auto& b = states[i].amplitudes();
    Eigen::VectorXcd next(amp.size() * b.size());
    for (Eigen::Index j = 0; j < amp.size(); ++j) {
      next.segment(j * b.size(), b.size()) = amp[j] * b;
    }
    amp = std::move(next);
  }
  return QuditState::from_amplitudes(std::move(layout), std::move(amp));
}

}  // namespace qpip
