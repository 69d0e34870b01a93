#include <algorithm>

#include "partite/error.hpp"
#include "partite/fincat.hpp"

namespace partite {

std::size_t IndexCategory::add_object(std::string name) {
  const std::size_t o = objects_.size();
  objects_.push_back(name);
  identity_.push_back(arrows_.size());
  arrows_.push_back({"id_" + name, o, o});
  is_identity_.push_back(true);
  return o;
}

std::size_t IndexCategory::add_arrow(std::string name, std::size_t src, std::size_t dst) {
  if (src >= objects_.size() || dst >= objects_.size()) {
    throw Error(ErrorCode::TypeMismatch, "arrow '" + name + "' has an unknown endpoint");
  }
  arrows_.push_back({std::move(name), src, dst});
  is_identity_.push_back(false);
  return arrows_.size() - 1;
}

void IndexCategory::add_composite(std::size_t first, std::size_t second, std::size_t result) {
  if (first >= arrows_.size() || second >= arrows_.size() || result >= arrows_.size()) {
    throw Error(ErrorCode::TypeMismatch, "composite refers to an unknown arrow");
  }
  composites_[{first, second}] = result;
}

std::optional<std::size_t> IndexCategory::find_object(const std::string& name) const {
  const auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - objects_.begin());
}

std::optional<std::size_t> IndexCategory::find_arrow(const std::string& name) const {
  for (std::size_t a = 0; a < arrows_.size(); ++a) {
    if (arrows_[a].name == name) return a;
  }
  return std::nullopt;
}

std::optional<std::size_t> IndexCategory::compose(std::size_t second, std::size_t first) const {
  if (arrows_.at(first).dst != arrows_.at(second).src) return std::nullopt;
  if (is_identity_[first]) return second;
  if (is_identity_[second]) return first;
  const auto it = composites_.find({first, second});
  if (it == composites_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> IndexCategory::law_violations() const {
  std::vector<std::string> out;
  for (const auto& [pair, result] : composites_) {
    const auto& f = arrows_[pair.first];
    const auto& g = arrows_[pair.second];
    const auto& c = arrows_[result];
    if (f.dst != g.src) out.push_back("composite of non-composable " + f.name + ", " + g.name);
    if (c.src != f.src || c.dst != g.dst) {
      out.push_back("composite " + g.name + "." + f.name + " = " + c.name + " has wrong endpoints");
    }
  }
  const std::size_t n = arrows_.size();
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = 0; g < n; ++g) {
      if (arrows_[f].dst != arrows_[g].src) continue;
      const auto gf = compose(g, f);
      if (!gf) {
        out.push_back("missing composite " + arrows_[g].name + "." + arrows_[f].name);
        continue;
      }
      for (std::size_t h = 0; h < n; ++h) {
        if (arrows_[g].dst != arrows_[h].src) continue;
        const auto hg = compose(h, g);
        if (!hg) continue;  // reported when (g, h) is visited as a pair
        const auto left = compose(h, *gf);
        const auto right = compose(*hg, f);
        if (!left || !right || *left != *right) {
          out.push_back("associativity fails for " + arrows_[h].name + "," + arrows_[g].name + "," +
                        arrows_[f].name);
        }
      }
    }
  }
  return out;
}

Diagram Diagram::with_identities(std::shared_ptr<const IndexCategory> index, Category target,
                                 std::vector<std::size_t> objects) {
  if (objects.size() != index->object_count()) {
    throw Error(ErrorCode::TypeMismatch, "diagram object map has the wrong length");
  }
  Diagram d;
  d.target = target;
  d.objects = std::move(objects);
  d.arrows.resize(index->arrow_count());
  for (std::size_t o = 0; o < index->object_count(); ++o) {
    d.arrows[index->identity(o)] = partite::identity(target, d.objects[o]);
  }
  d.index = std::move(index);
  return d;
}

std::vector<std::string> functor_violations(const Diagram& d) {
  std::vector<std::string> out;
  const IndexCategory& J = *d.index;
  if (d.objects.size() != J.object_count() || d.arrows.size() != J.arrow_count()) {
    out.push_back("object or arrow map has the wrong length");
    return out;
  }
  for (std::size_t a = 0; a < J.arrow_count(); ++a) {
    const auto& arr = J.arrow(a);
    if (!is_morphism(d.target, d.arrows[a], d.objects[arr.src], d.objects[arr.dst])) {
      out.push_back("image of " + arr.name + " is not a morphism of the right type");
    } else if (J.is_identity(a) && d.arrows[a] != identity(d.target, d.objects[arr.src])) {
      out.push_back("identity " + arr.name + " is not sent to an identity");
    }
  }
  if (!out.empty()) return out;
  for (const auto& [pair, result] : J.composites()) {
    const auto& [first, second] = pair;
    if (J.arrow(first).dst != J.arrow(second).src) continue;
    if (compose(d.target, d.arrows[second], d.arrows[first]) != d.arrows[result]) {
      out.push_back("composite " + J.arrow(result).name + " is not preserved");
    }
  }
  return out;
}

std::optional<std::string> cocone_violation(const Cocone& c) {
  const Diagram& d = *c.diagram;
  const IndexCategory& J = *d.index;
  if (c.legs.size() != J.object_count()) return "cocone has the wrong number of legs";
  for (std::size_t o = 0; o < J.object_count(); ++o) {
    if (!is_morphism(d.target, c.legs[o], d.objects[o], c.apex)) {
      return "leg at " + J.object_name(o) + " is not a morphism into the apex";
    }
  }
  for (std::size_t a = 0; a < J.arrow_count(); ++a) {
    if (J.is_identity(a)) continue;
    const auto& arr = J.arrow(a);
    if (compose(d.target, c.legs[arr.dst], d.arrows[a]) != c.legs[arr.src]) {
      return "cocone square fails at " + arr.name;
    }
  }
  return std::nullopt;
}

}  // namespace partite
