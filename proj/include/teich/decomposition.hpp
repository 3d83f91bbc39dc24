#pragma once

// Decomposition data of a Teichmüller ray's vertical foliation, and the
// flow action on it.
//
// A ray is described by its indecomposable vertical components G_j, each a
// cylinder or a minimal piece carrying an ergodic transverse measure, with
// weight a_j > 0 and horizontal pairing h_j = i(G_j, H) > 0. The stored
// pairs may sit at any overall scale: with s = Σ a_j h_j, the object
// denotes the unit-area data (a_j/√s, h_j/√s). Keeping s symbolic instead
// of dividing through preserves exactness — every derived quantity is
// either scale-free (moduli, limits, distances) or depends on s through
// squares only, so nothing here ever needs √s itself.

#include "teich/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace teich {

enum class ComponentKind { cylinder, minimal_ergodic };

enum class Direction { vertical, horizontal };

inline std::string_view to_string(ComponentKind k) {
  return k == ComponentKind::cylinder ? "cylinder" : "minimal";
}

inline std::optional<ComponentKind> parse_component_kind(std::string_view s) {
  if (s == "cylinder") return ComponentKind::cylinder;
  if (s == "minimal") return ComponentKind::minimal_ergodic;
  return std::nullopt;
}

struct Component {
  std::string id;  // opaque token; equality of ids asserts equality of pieces
  ComponentKind kind = ComponentKind::cylinder;
  Rat a;  // transverse weight of G_j in the vertical foliation
  Rat h;  // pairing i(G_j, H) with the horizontal foliation

  friend bool operator==(const Component& x, const Component& y) {
    return x.id == y.id && x.kind == y.kind && x.a == y.a && x.h == y.h;
  }
};

class RayDecomposition {
 public:
  explicit RayDecomposition(std::vector<Component> components)
      : comps_(std::move(components)), area_(0) {
    if (comps_.empty())
      throw std::invalid_argument("ray decomposition: no components");
    for (const Component& c : comps_) {
      if (c.id.empty())
        throw std::invalid_argument("ray decomposition: empty component id");
      if (c.a <= 0 || c.h <= 0)
        throw std::invalid_argument("ray decomposition: component '" + c.id +
                                    "' needs a > 0 and h > 0");
      area_ += c.a * c.h;
    }
    for (std::size_t j = 0; j < comps_.size(); ++j)
      if (!index_.emplace(comps_[j].id, j).second)
        throw std::invalid_argument("ray decomposition: duplicate id '" +
                                    comps_[j].id + "'");
  }

  std::size_t size() const { return comps_.size(); }
  const Component& operator[](std::size_t j) const { return comps_[j]; }
  const std::vector<Component>& components() const { return comps_; }

  // s = Σ a_j h_j of the stored representative. The decomposition denotes
  // the unit-area rescaling (a_j/√s, h_j/√s).
  const Rat& area() const { return area_; }
  bool is_normalized() const { return area_ == 1; }

  std::optional<std::size_t> index_of(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // m_j = a_j / h_j; invariant under rescaling, so the raw pair works.
  Rat modulus(std::size_t j) const { return comps_[j].a / comps_[j].h; }

  friend bool operator==(const RayDecomposition& x, const RayDecomposition& y) {
    return x.comps_ == y.comps_;
  }

 private:
  std::vector<Component> comps_;
  Rat area_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Validates and adopts raw (a_j, h_j) data. The unit-area condition is kept
// symbolic (see the class comment), so moduli are untouched and the area
// scalar records the scale; inputs that already have Σ a_j h_j = 1 are
// fixed points.
inline RayDecomposition normalize(std::vector<Component> raw) {
  return RayDecomposition(std::move(raw));
}

using ModulusVector = std::vector<Rat>;

inline ModulusVector moduli(const RayDecomposition& d) {
  ModulusVector m;
  m.reserve(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) m.push_back(d.modulus(j));
  return m;
}

// Flow time, carried as the exact scale factor e^t. real(t) snaps e^t to
// the nearest double and then treats that dyadic rational exactly, so
// flowed data is exact in both modes; only the snap itself rounds.
class FlowParam {
 public:
  static FlowParam real(double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("flow: time must be finite");
    const double factor = std::exp(t);
    if (factor == 0 || !std::isfinite(factor))
      throw std::invalid_argument("flow: e^t out of range");
    return FlowParam(rat_of(factor), t);
  }

  // t = log(factor) for an exact rational factor > 0.
  static FlowParam log_of(const Rat& factor) {
    if (factor <= 0) throw std::invalid_argument("flow: factor must be positive");
    return FlowParam(factor, log_as_double(factor));
  }

  const Rat& exp_factor() const { return factor_; }  // e^t
  double time() const { return time_; }

 private:
  FlowParam(Rat factor, double time) : factor_(std::move(factor)), time_(time) {}
  Rat factor_;
  double time_;
};

// g_t: transverse weights expand by e^t, horizontal pairings shrink by
// e^t. Area is exactly invariant; moduli scale by e^{2t}.
inline RayDecomposition flow(const RayDecomposition& d, const FlowParam& t) {
  std::vector<Component> out = d.components();
  for (Component& c : out) {
    c.a *= t.exp_factor();
    c.h /= t.exp_factor();
  }
  return RayDecomposition(std::move(out));
}

}  // namespace teich
