#include <cctype>
#include <string>
#include <vector>

#include "maf/errors.hpp"
#include "maf/tree.hpp"

namespace maf {
namespace {

bool is_label_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' &&
         c != ';' && c != ':';
}

class NewickReader {
 public:
  explicit NewickReader(std::string_view s) : s_(s) {}

  RootedBinaryTree read() {
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("empty input");
    // one frame per open parenthesis, holding the children seen so far
    std::vector<std::vector<int>> frames;
    int root = -1;
    bool want_item = true;
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      const char c = s_[pos_];
      if (c == ';') break;
      if (root >= 0) throw ParseError(where("text after the root"));
      if (want_item) {
        if (c == '(') {
          ++pos_;
          frames.emplace_back();
          continue;
        }
        std::string label = take_label();
        if (label.empty()) throw ParseError(where("expected a leaf label"));
        skip_length();
        place(frames, root, b_.add_leaf(std::move(label)));
        want_item = false;
        continue;
      }
      if (c == ',') {
        if (frames.empty()) throw ParseError(where("',' outside parentheses"));
        ++pos_;
        want_item = true;
      } else if (c == ')') {
        if (frames.empty()) throw ParseError(where("unbalanced ')'"));
        ++pos_;
        std::vector<int> kids = std::move(frames.back());
        frames.pop_back();
        if (kids.size() != 2)
          throw ParseError(where("non-binary node with " + std::to_string(kids.size()) + " children"));
        take_label();  // internal labels are dropped
        skip_length();
        place(frames, root, b_.add_internal(kids[0], kids[1]));
      } else {
        throw ParseError(where(std::string("unexpected '") + c + "'"));
      }
    }
    if (!frames.empty()) throw ParseError("unbalanced parentheses: missing ')'");
    if (root < 0) throw ParseError(where("incomplete tree"));
    if (pos_ < s_.size()) {
      ++pos_;  // ';'
      skip_ws();
      if (pos_ != s_.size()) throw ParseError(where("text after ';'"));
    }
    try {
      return b_.build(root);
    } catch (const InputError& e) {
      throw ParseError(e.what());
    }
  }

 private:
  void place(std::vector<std::vector<int>>& frames, int& root, int handle) {
    if (frames.empty())
      root = handle;
    else
      frames.back().push_back(handle);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string take_label() {
    skip_ws();
    const size_t start = pos_;
    while (pos_ < s_.size() && is_label_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  void skip_length() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == ':') {
      ++pos_;
      if (take_label().empty()) throw ParseError(where("missing branch length"));
    }
  }

  std::string where(const std::string& msg) const {
    return msg + " at offset " + std::to_string(pos_);
  }

  std::string_view s_;
  size_t pos_ = 0;
  TreeBuilder b_;
};

}  // namespace

RootedBinaryTree parse_newick(std::string_view text) { return NewickReader(text).read(); }

std::string to_newick(const RootedBinaryTree& tree, bool canonical) {
  const int n = tree.node_count();
  std::vector<std::string> text(n);
  std::vector<const std::string*> smallest(n);
  for (NodeId v = 0; v < n; ++v) {
    if (tree.is_leaf(v)) {
      text[v] = tree.label(v);
      smallest[v] = &tree.label(v);
      continue;
    }
    NodeId a = tree.left(v), b = tree.right(v);
    if (canonical && *smallest[b] < *smallest[a]) std::swap(a, b);
    smallest[v] = smallest[a];
    text[v].reserve(text[a].size() + text[b].size() + 3);
    text[v] += '(';
    text[v] += text[a];
    text[v] += ',';
    text[v] += text[b];
    text[v] += ')';
    std::string().swap(text[a]);
    std::string().swap(text[b]);
  }
  return text[tree.root()] + ";";
}

}  // namespace maf
