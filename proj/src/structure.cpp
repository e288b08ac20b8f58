#include "depgini/structure.hpp"

#include <algorithm>
#include <cctype>

#include "depgini/error.hpp"

namespace depgini {

class StructureParser {
 public:
  StructureParser(std::string_view text, StructureFunction& out) : text_(text), out_(out) {}

  void run() {
    out_.root_ = expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ConstructionError("bad structure expression '" + std::string(text_) + "' at " + std::to_string(pos_) +
                            ": " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int expr() {
    skip_space();
    if (text_.substr(pos_, 3) == "min" || text_.substr(pos_, 3) == "max") {
      const auto op = text_.substr(pos_, 3) == "min" ? StructureFunction::Op::min : StructureFunction::Op::max;
      pos_ += 3;
      if (!eat('(')) fail("expected '('");
      std::vector<int> kids{expr()};
      while (eat(',')) kids.push_back(expr());
      if (!eat(')')) fail("expected ')'");
      out_.nodes_.push_back({op, -1, std::move(kids)});
      return static_cast<int>(out_.nodes_.size()) - 1;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'x' || text_[pos_] == 'X')) {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected component index");
      const int index = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (index < 1) fail("component indices start at 1");
      out_.max_component_ = std::max(out_.max_component_, index);
      out_.nodes_.push_back({StructureFunction::Op::leaf, index - 1, {}});
      return static_cast<int>(out_.nodes_.size()) - 1;
    }
    fail("expected min, max or a component");
  }

  std::string_view text_;
  StructureFunction& out_;
  std::size_t pos_ = 0;
};

StructureFunction StructureFunction::parse(std::string_view text) {
  StructureFunction f;
  StructureParser(text, f).run();
  return f;
}

double StructureFunction::evaluate(std::span<const double> lifetimes) const {
  if (static_cast<int>(lifetimes.size()) < max_component_) {
    throw ArgumentError("structure needs " + std::to_string(max_component_) + " lifetimes, got " +
                        std::to_string(lifetimes.size()));
  }
  return eval(root_, lifetimes);
}

double StructureFunction::eval(int node, std::span<const double> x) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  if (n.op == Op::leaf) return x[static_cast<std::size_t>(n.component)];
  double acc = eval(n.children.front(), x);
  for (std::size_t i = 1; i < n.children.size(); ++i) {
    const double v = eval(n.children[i], x);
    acc = n.op == Op::min ? std::min(acc, v) : std::max(acc, v);
  }
  return acc;
}

std::string StructureFunction::to_string() const {
  std::string out;
  print(root_, out);
  return out;
}

void StructureFunction::print(int node, std::string& out) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  if (n.op == Op::leaf) {
    out += "x" + std::to_string(n.component + 1);
    return;
  }
  out += n.op == Op::min ? "min(" : "max(";
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i > 0) out += ",";
    print(n.children[i], out);
  }
  out += ")";
}

}  // namespace depgini
