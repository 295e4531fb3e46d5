#include "ncrat/parser.hpp"

#include "ncrat/errors.hpp"

#include <cctype>
#include <charconv>

namespace ncrat {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int g) : text_(text), g_(g) {}

  RationalExpr parse() {
    RationalExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool keyword(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    std::size_t after = pos_ + word.size();
    while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after]))) ++after;
    if (after >= text_.size() || text_[after] != '(') return false;
    pos_ = after + 1;
    return true;
  }

  // 1×1 operands next to a k×k one are promoted to (operand)⊗I_k.
  static void match_for_sum(RationalExpr& a, RationalExpr& b) {
    if (a.rows() == b.rows() && a.cols() == b.cols()) return;
    if (a.rows() == 1 && a.cols() == 1 && b.rows() == b.cols()) {
      a = lift(a, b.rows());
    } else if (b.rows() == 1 && b.cols() == 1 && a.rows() == a.cols()) {
      b = lift(b, a.rows());
    }
  }

  static void match_for_product(RationalExpr& a, RationalExpr& b) {
    if (a.cols() == b.rows()) return;
    if (a.rows() == 1 && a.cols() == 1) {
      a = lift(a, b.rows());
    } else if (b.rows() == 1 && b.cols() == 1) {
      b = lift(b, a.cols());
    }
  }

  RationalExpr expr() {
    RationalExpr acc = term();
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') return acc;
      const std::size_t at = pos_++;
      RationalExpr rhs = term();
      if (c == '-') rhs = RationalExpr::scalar_mul(-1.0, rhs);
      match_for_sum(acc, rhs);
      try {
        acc = RationalExpr::sum({acc, rhs});
      } catch (const ShapeMismatch& err) {
        throw ParseError(err.what(), at);
      }
    }
  }

  RationalExpr term() {
    RationalExpr acc = factor();
    while (peek() == '*') {
      const std::size_t at = pos_++;
      RationalExpr rhs = factor();
      match_for_product(acc, rhs);
      try {
        acc = RationalExpr::product({acc, rhs});
      } catch (const ShapeMismatch& err) {
        throw ParseError(err.what(), at);
      }
    }
    return acc;
  }

  RationalExpr factor() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return RationalExpr::scalar_mul(-1.0, factor());
    }
    if (c == '(') {
      ++pos_;
      RationalExpr e = expr();
      expect(')');
      return e;
    }
    if (c == '[') return matrix();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (keyword("inv")) {
      const std::size_t at = pos_;
      RationalExpr arg = expr();
      expect(')');
      if (arg.rows() != arg.cols()) throw ParseError("inverse of a non-square expression", at);
      return RationalExpr::inverse(arg);
    }
    if (keyword("T")) {
      RationalExpr arg = expr();
      expect(')');
      return RationalExpr::transpose(arg);
    }
    if (c == 'x') return variable();
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  RationalExpr number() {
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    auto res = std::from_chars(begin, text_.data() + text_.size(), value);
    if (res.ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    return RationalExpr::constant(Matrix::Constant(1, 1, value), g_);
  }

  RationalExpr variable() {
    const std::size_t start = pos_++;
    std::size_t end = pos_;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    if (end == pos_) fail("expected digits after 'x'");
    int index = 0;
    std::from_chars(text_.data() + pos_, text_.data() + end, index);
    if (index < 1 || index > g_) {
      pos_ = start;
      fail("variable x" + std::string(text_.substr(start + 1, end - start - 1)) + " outside x1..x" +
           std::to_string(g_));
    }
    pos_ = end;
    return RationalExpr::variable(index - 1, g_);
  }

  RationalExpr matrix() {
    const std::size_t start = pos_;
    expect('[');
    std::vector<std::vector<RationalExpr>> rows(1);
    for (;;) {
      rows.back().push_back(expr());
      const char c = peek();
      if (c == ',') {
        ++pos_;
      } else if (c == ';') {
        ++pos_;
        rows.emplace_back();
      } else if (c == ']') {
        ++pos_;
        break;
      } else {
        fail("expected ',', ';' or ']' in matrix");
      }
    }
    const std::size_t ncols = rows.front().size();
    for (const auto& r : rows) {
      if (r.size() != ncols) {
        pos_ = start;
        fail("matrix rows have different lengths");
      }
    }
    // Block heights per row and widths per column must be consistent.
    std::vector<int> heights(rows.size());
    std::vector<int> widths(ncols);
    for (std::size_t i = 0; i < rows.size(); ++i) heights[i] = rows[i][0].rows();
    for (std::size_t j = 0; j < ncols; ++j) widths[j] = rows[0][j].cols();
    int total_rows = 0;
    int total_cols = 0;
    for (int h : heights) total_rows += h;
    for (int w : widths) total_cols += w;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < ncols; ++j) {
        if (rows[i][j].rows() != heights[i] || rows[i][j].cols() != widths[j]) {
          pos_ = start;
          fail("matrix blocks have inconsistent sizes");
        }
      }
    }
    // Σ E_i · block_ij · F_j with constant selectors E_i, F_j.
    std::vector<RationalExpr> terms;
    int row_off = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      int col_off = 0;
      for (std::size_t j = 0; j < ncols; ++j) {
        Matrix e = Matrix::Zero(total_rows, heights[i]);
        e.block(row_off, 0, heights[i], heights[i]).setIdentity();
        Matrix f = Matrix::Zero(widths[j], total_cols);
        f.block(0, col_off, widths[j], widths[j]).setIdentity();
        terms.push_back(RationalExpr::product(
            {RationalExpr::constant(e, g_), rows[i][j], RationalExpr::constant(f, g_)}));
        col_off += widths[j];
      }
      row_off += heights[i];
    }
    return RationalExpr::sum(std::move(terms));
  }

  std::string_view text_;
  int g_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalExpr parse_expression(std::string_view text, int g) {
  if (g < 1) throw InvalidArgument("number of variables must be at least 1");
  return Parser(text, g).parse();
}

}  // namespace ncrat
