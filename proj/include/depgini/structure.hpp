#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace depgini {

/// Min/max expression over component lifetimes x1, x2, ...
///
/// Text form is prefix function notation, e.g. "max(min(x1,x2),x3)".
/// Only min and max nodes exist, so every expression is monotone.
class StructureFunction {
 public:
  /// Throws ConstructionError on malformed text.
  static StructureFunction parse(std::string_view text);

  /// Highest component index referenced (1-based).
  int max_component() const { return max_component_; }

  /// Throws ArgumentError if fewer than max_component() lifetimes are given.
  double evaluate(std::span<const double> lifetimes) const;

  std::string to_string() const;

 private:
  enum class Op { leaf, min, max };
  struct Node {
    Op op;
    int component;  // 0-based, leaves only
    std::vector<int> children;
  };

  double eval(int node, std::span<const double> x) const;
  void print(int node, std::string& out) const;

  std::vector<Node> nodes_;
  int root_ = 0;
  int max_component_ = 0;

  friend class StructureParser;
};

}  // namespace depgini
