#include "catrank/parser.hpp"

#include <cctype>

namespace catrank {

namespace {

const char* const kKeywords[] = {"def",    "main",   "point", "empty",  "susp",
                                 "omegasusp", "coprod", "cat",   "objects", "hom"};

bool is_keyword(const std::string& s) {
  for (const char* k : kKeywords)
    if (s == k) return true;
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SkeletonEnv parse_file() {
    SkeletonEnv env;
    skip_ws();
    while (!eof()) {
      if (peek_word("main")) {
        expect_word("main");
        expect('=');
        std::string name = parse_ident();
        expect(';');
        env.set_main(name);
        skip_ws();
        if (!eof()) fail("main must be the last declaration");
        break;
      }
      expect_word("def");
      std::string name = parse_ident();
      if (env.lookup(name)) fail("duplicate definition '" + name + "'");
      expect('=');
      ExprPtr body = parse_expr();
      expect(';');
      env.define(std::move(name), std::move(body));
      skip_ws();
    }
    env.validate();
    return env;
  }

  ExprPtr parse_expr_only() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (!eof()) fail("trailing input after expression");
    return e;
  }

 private:
  ExprPtr parse_expr() {
    skip_ws();
    int l = line_, c = col_;
    std::string word = parse_ident_raw();
    if (word == "point") return mk_point();
    if (word == "empty") return mk_empty();
    if (word == "susp") {
      expect('(');
      ExprPtr inner = parse_expr();
      expect(')');
      return mk_susp(std::move(inner));
    }
    if (word == "omegasusp") {
      expect('(');
      ExprPtr inner = parse_expr();
      expect(')');
      return mk_omegasusp(std::move(inner));
    }
    if (word == "coprod") {
      expect('(');
      std::vector<ExprPtr> comps;
      comps.push_back(parse_expr());
      while (match(',')) comps.push_back(parse_expr());
      expect(')');
      return mk_coprod(std::move(comps));
    }
    if (word == "cat") {
      expect('{');
      expect_word("objects");
      expect(':');
      expect('[');
      std::vector<std::string> objects;
      objects.push_back(parse_ident());
      while (match(',')) objects.push_back(parse_ident());
      expect(']');
      expect(';');
      for (std::size_t i = 0; i < objects.size(); ++i)
        for (std::size_t j = i + 1; j < objects.size(); ++j)
          if (objects[i] == objects[j]) fail("duplicate object '" + objects[i] + "'");
      std::vector<std::pair<std::pair<std::string, std::string>, ExprPtr>> homs;
      while (peek_word("hom")) {
        expect_word("hom");
        expect('(');
        std::string a = parse_ident();
        expect(',');
        std::string b = parse_ident();
        expect(')');
        expect('=');
        ExprPtr hom = parse_expr();
        expect(';');
        for (const auto& [pair, _] : homs)
          if (pair.first == a && pair.second == b)
            fail("duplicate hom entry (" + a + ", " + b + ")");
        auto known = [&](const std::string& n) {
          for (const auto& o : objects)
            if (o == n) return true;
          return false;
        };
        if (!known(a) || !known(b)) fail("hom entry names unknown object");
        homs.emplace_back(std::make_pair(a, b), std::move(hom));
      }
      expect('}');
      return mk_node(std::move(objects), std::move(homs));
    }
    if (word.empty()) fail("expected an expression");
    if (is_keyword(word)) fail("unexpected keyword '" + word + "'");
    return mk_ref(std::move(word), l, c);
  }

  std::string parse_ident() {
    skip_ws();
    std::string s = parse_ident_raw();
    if (s.empty()) fail("expected identifier");
    if (is_keyword(s)) fail("'" + s + "' is a keyword, not an identifier");
    return s;
  }

  std::string parse_ident_raw() {
    skip_ws();
    std::string s;
    if (!eof() && (std::isalpha(static_cast<unsigned char>(cur())) || cur() == '_')) {
      while (!eof() && (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_')) {
        s.push_back(cur());
        advance();
      }
    }
    return s;
  }

  bool peek_word(std::string_view w) {
    skip_ws();
    std::size_t save = pos_;
    int sl = line_, sc = col_;
    std::string s = parse_ident_raw();
    pos_ = save;
    line_ = sl;
    col_ = sc;
    return s == w;
  }

  void expect_word(std::string_view w) {
    skip_ws();
    std::string s = parse_ident_raw();
    if (s != w) fail("expected '" + std::string(w) + "'");
  }

  void expect(char c) {
    skip_ws();
    if (eof() || cur() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  bool match(char c) {
    skip_ws();
    if (!eof() && cur() == c) {
      advance();
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (!eof()) {
      if (std::isspace(static_cast<unsigned char>(cur()))) {
        advance();
      } else if (cur() == '#') {
        while (!eof() && cur() != '\n') advance();
      } else {
        break;
      }
    }
  }

  char cur() const { return text_[pos_]; }
  bool eof() const { return pos_ >= text_.size(); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) {
    throw skeleton_parse_error(message, line_, col_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

}  // namespace

SkeletonEnv parse_file(std::string_view text) { return Parser(text).parse_file(); }

ExprPtr parse_expr_text(std::string_view text) { return Parser(text).parse_expr_only(); }

}  // namespace catrank
