#include <cctype>
#include <limits>

#include "krsym/error.hpp"
#include "krsym/rexpr.hpp"

namespace krsym {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  GroupExpr parse_all() {
    GroupExpr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(ErrorKind::ParseError, pos_, "unexpected trailing input");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_product_operator() {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == 'x';
  }

  bool at_wreath_operator() {
    skip_ws();
    return text_.substr(pos_, 2) == "wr";
  }

  GroupExpr parse_expr() {
    skip_ws();
    const std::size_t start = pos_;
    std::vector<GroupExpr> terms;
    terms.push_back(parse_term());
    while (at_product_operator()) {
      ++pos_;
      terms.push_back(parse_term());
    }
    if (terms.size() == 1) return std::move(terms.front());
    GroupExpr e = GroupExpr::prod(std::move(terms));
    e.span = {start, pos_};
    return e;
  }

  GroupExpr parse_term() {
    skip_ws();
    const std::size_t start = pos_;
    GroupExpr e = parse_atom();
    while (at_wreath_operator()) {
      pos_ += 2;
      GroupExpr top = parse_atom();
      try {
        e = GroupExpr::wr(std::move(e), std::move(top));
      } catch (const Error& err) {
        throw ParseError(err.kind(), start, err.what());
      }
      e.span = {start, pos_};
    }
    return e;
  }

  GroupExpr parse_atom() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) throw ParseError(ErrorKind::ParseError, pos_, "expected a group");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      GroupExpr inner = parse_expr();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError(ErrorKind::ParseError, pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '1') {
      ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError(ErrorKind::ParseError, start, "bare integers other than 1 are not groups");
      GroupExpr e = GroupExpr::triv();
      e.span = {start, pos_};
      return e;
    }
    Family family;
    switch (c) {
      case 'Z': family = Family::Cyclic; break;
      case 'D': family = Family::Dihedral; break;
      case 'S': family = Family::Symmetric; break;
      default:
        throw ParseError(ErrorKind::ParseError, pos_, std::string("unexpected character '") + c + "'");
    }
    ++pos_;
    skip_ws();
    const std::size_t digits = pos_;
    std::uint64_t n = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      n = n * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (n > std::numeric_limits<std::uint32_t>::max())
        throw ParseError(ErrorKind::DegreeError, digits, "degree too large");
      ++pos_;
    }
    if (pos_ == digits) throw ParseError(ErrorKind::ParseError, pos_, "expected a degree");
    if (n == 0) throw ParseError(ErrorKind::DegreeError, start, "degree must be at least 1");
    GroupExpr e = GroupExpr::atom(family, static_cast<std::uint32_t>(n));
    e.span = {start, pos_};
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

char family_letter(Family f) {
  switch (f) {
    case Family::Cyclic: return 'Z';
    case Family::Dihedral: return 'D';
    case Family::Symmetric: return 'S';
  }
  return '?';
}

void print(const GroupExpr& e, std::string& out) {
  switch (e.kind()) {
    case GroupExpr::Kind::Triv: out += '1'; return;
    case GroupExpr::Kind::Atom:
      out += family_letter(e.family());
      out += std::to_string(e.n());
      return;
    case GroupExpr::Kind::Prod: {
      bool first = true;
      for (const auto& child : e.children()) {
        if (!first) out += " x ";
        first = false;
        if (child.is_prod()) {
          out += '(';
          print(child, out);
          out += ')';
        } else {
          print(child, out);
        }
      }
      return;
    }
    case GroupExpr::Kind::Wr: {
      if (e.base().is_prod()) {
        out += '(';
        print(e.base(), out);
        out += ')';
      } else {
        print(e.base(), out);
      }
      out += " wr ";
      if (e.top().is_atom() || e.top().is_triv()) {
        print(e.top(), out);
      } else {
        out += '(';
        print(e.top(), out);
        out += ')';
      }
      return;
    }
  }
}

}  // namespace

GroupExpr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string pretty_print(const GroupExpr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace krsym
