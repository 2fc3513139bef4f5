#include "rcrt/group_tree.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace rcrt {

using nlohmann::json;

GroupTree GroupTree::leaf(std::vector<std::size_t> indices) {
  if (indices.empty()) throw std::invalid_argument("empty group");
  GroupTree t;
  t.indices_ = std::move(indices);
  return t;
}

GroupTree GroupTree::node(std::vector<GroupTree> children) {
  if (children.size() < 2) {
    throw std::invalid_argument("a grouping node needs at least two children");
  }
  GroupTree t;
  t.children_ = std::move(children);
  return t;
}

std::vector<std::vector<std::size_t>> GroupTree::leaves() const {
  if (is_leaf()) return {indices_};
  std::vector<std::vector<std::size_t>> out;
  for (const auto& c : children_) {
    auto sub = c.leaves();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::size_t GroupTree::depth() const {
  std::size_t d = 0;
  for (const auto& c : children_) d = std::max(d, c.depth());
  return d + 1;
}

Integer GroupTree::lcm(const ModuliSet& moduli) const {
  Integer acc = 1;
  for (const auto& l : leaves()) {
    for (auto i : l) acc = rcrt::lcm(acc, moduli[i]);
  }
  return acc;
}

void GroupTree::validate(const ModuliSet& moduli) const {
  std::vector<bool> covered(moduli.size(), false);
  for (const auto& l : leaves()) {
    for (std::size_t a = 0; a < l.size(); ++a) {
      if (l[a] >= moduli.size()) {
        throw std::invalid_argument("group index " + std::to_string(l[a]) +
                                    " out of range");
      }
      if (std::find(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(a), l[a]) !=
          l.begin() + static_cast<std::ptrdiff_t>(a)) {
        throw std::invalid_argument("index repeated within a group");
      }
      covered[l[a]] = true;
    }
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw std::invalid_argument("grouping does not cover every modulus");
  }

  // Equal child lcms collapse two congruences into one.
  auto check_node = [&](const GroupTree& t, auto&& self) -> void {
    if (t.is_leaf()) return;
    std::vector<Integer> lcms;
    for (const auto& c : t.children_) {
      Integer l = c.lcm(moduli);
      if (std::find(lcms.begin(), lcms.end(), l) != lcms.end()) {
        throw std::invalid_argument("degenerate grouping: two children share lcm " +
                                    l.get_str());
      }
      lcms.push_back(std::move(l));
      self(c, self);
    }
  };
  check_node(*this, check_node);
}

namespace {

GroupTree from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("grouping must be a nonempty JSON array");
  }
  const bool all_ints = std::all_of(j.begin(), j.end(), [](const json& e) {
    return e.is_number_integer();
  });
  if (all_ints) {
    std::vector<std::size_t> idx;
    for (const auto& e : j) {
      if (e.get<long long>() < 0) throw std::invalid_argument("negative group index");
      idx.push_back(e.get<std::size_t>());
    }
    return GroupTree::leaf(std::move(idx));
  }
  std::vector<GroupTree> children;
  for (const auto& e : j) {
    if (!e.is_array()) {
      throw std::invalid_argument("grouping mixes indices and subgroups");
    }
    children.push_back(from_json(e));
  }
  return GroupTree::node(std::move(children));
}

json to_json_value(const GroupTree& t) {
  if (t.is_leaf()) return json(t.indices());
  json arr = json::array();
  for (const auto& c : t.children()) arr.push_back(to_json_value(c));
  return arr;
}

}  // namespace

GroupTree GroupTree::parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed grouping: ") + e.what());
  }
  return from_json(j);
}

std::string GroupTree::to_json() const { return to_json_value(*this).dump(); }

}  // namespace rcrt
