#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "lpnq/lpres.hpp"

namespace lpnq {

  ParseError::ParseError(std::string const& msg, size_t line, size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column "
                           + std::to_string(column) + ": " + msg),
        _message(msg),
        _line(line),
        _column(column) {}

  namespace {

    enum class tok { ident, number, arrow, symbol, end };

    struct Token {
      tok         kind;
      std::string text;
      size_t      line;
      size_t      column;
    };

    std::vector<Token> tokenize(std::string_view src) {
      std::vector<Token> out;
      size_t             line = 1, col = 1;
      size_t             i = 0;
      auto               advance = [&](size_t k) {
        for (size_t j = 0; j < k; ++j) {
          if (src[i] == '\n') {
            ++line;
            col = 1;
          } else {
            ++col;
          }
          ++i;
        }
      };
      while (i < src.size()) {
        char ch = src[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
          advance(1);
        } else if (ch == '#') {
          while (i < src.size() && src[i] != '\n') {
            advance(1);
          }
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
          size_t j = i;
          while (j < src.size()
                 && (std::isalnum(static_cast<unsigned char>(src[j]))
                     || src[j] == '_')) {
            ++j;
          }
          out.push_back(
              {tok::ident, std::string(src.substr(i, j - i)), line, col});
          advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
          size_t j = i;
          while (j < src.size()
                 && std::isdigit(static_cast<unsigned char>(src[j]))) {
            ++j;
          }
          out.push_back(
              {tok::number, std::string(src.substr(i, j - i)), line, col});
          advance(j - i);
        } else if (src.substr(i, 2) == "->") {
          out.push_back({tok::arrow, "->", line, col});
          advance(2);
        } else if (std::string_view("{}:;,*^()[]-").find(ch)
                   != std::string_view::npos) {
          out.push_back({tok::symbol, std::string(1, ch), line, col});
          advance(1);
        } else {
          throw ParseError(std::string("unexpected character '") + ch + "'",
                           line,
                           col);
        }
      }
      out.push_back({tok::end, "", line, col});
      return out;
    }

    class Parser {
     public:
      explicit Parser(std::string_view src) : _toks(tokenize(src)) {}

      LPresentation presentation();
      Word          single_word();

      void set_alphabet(Alphabet const& x) {
        _alphabet = x;
      }

     private:
      Token const& peek() const {
        return _toks[_pos];
      }
      Token const& next() {
        return _toks[_pos < _toks.size() - 1 ? _pos++ : _pos];
      }
      bool at(std::string_view sym) const {
        return peek().kind == tok::symbol && peek().text == sym;
      }
      [[noreturn]] void fail(std::string const& msg, Token const& t) const {
        throw ParseError(msg, t.line, t.column);
      }
      [[noreturn]] void unexpected(std::string const& wanted) const {
        auto const& t = peek();
        fail("expected " + wanted + " but found "
                 + (t.kind == tok::end ? std::string("end of input")
                                       : "'" + t.text + "'"),
             t);
      }
      void expect(std::string_view sym) {
        if (!at(sym) && !(sym == "->" && peek().kind == tok::arrow)) {
          unexpected("'" + std::string(sym) + "'");
        }
        next();
      }
      std::string ident(std::string const& what) {
        if (peek().kind != tok::ident) {
          unexpected(what);
        }
        return next().text;
      }
      void keyword(std::string_view kw) {
        if (peek().kind != tok::ident || peek().text != kw) {
          unexpected("'" + std::string(kw) + "'");
        }
        next();
      }

      Word              word();
      Word              term();
      Word              factor();
      std::vector<Word> word_list();

      std::vector<Token>    _toks;
      size_t                _pos = 0;
      std::optional<Alphabet> _alphabet;
    };

    Word Parser::word() {
      Word w = term();
      while (at("*")) {
        next();
        w *= term();
      }
      return w;
    }

    Word Parser::term() {
      Word w = factor();
      while (at("^")) {
        next();
        if (peek().kind == tok::number || at("-")) {
          bool neg = at("-");
          if (neg) {
            next();
          }
          if (peek().kind != tok::number) {
            unexpected("an exponent");
          }
          Integer e(next().text);
          w = w.pow(neg ? Integer(-e) : e);
        } else {
          w = w.conjugate(factor());
        }
      }
      return w;
    }

    Word Parser::factor() {
      auto const& t = peek();
      if (t.kind == tok::number) {
        if (t.text != "1") {
          fail("only 1 may be used as a word (the identity)", t);
        }
        next();
        return Word();
      }
      if (t.kind == tok::ident) {
        auto i = _alphabet->index_of(t.text);
        if (!i) {
          fail("unknown generator \"" + t.text + "\"", t);
        }
        next();
        return Word::generator(*i);
      }
      if (at("(")) {
        next();
        Word w = word();
        expect(")");
        return w;
      }
      if (at("[")) {
        next();
        Word w = word();
        expect(",");
        w = commutator(w, word());
        while (at(",")) {
          next();
          w = commutator(w, word());
        }
        expect("]");
        return w;
      }
      unexpected("a word");
    }

    std::vector<Word> Parser::word_list() {
      std::vector<Word> out;
      if (at(";")) {
        return out;
      }
      out.push_back(word());
      while (at(",")) {
        next();
        out.push_back(word());
      }
      return out;
    }

    Word Parser::single_word() {
      Word w = word();
      if (peek().kind != tok::end) {
        unexpected("end of word");
      }
      return w;
    }

    LPresentation Parser::presentation() {
      keyword("group");
      std::string name = ident("a group name");
      expect("{");

      std::vector<Word>              fixed, iterated;
      std::vector<NamedEndomorphism> endos;
      bool                           invariant = false;
      bool seen_fixed = false, seen_iterated = false, seen_invariant = false;

      while (!at("}")) {
        Token const kw = peek();
        if (kw.kind != tok::ident) {
          unexpected("a section keyword or '}'");
        }
        next();
        if (kw.text == "generators") {
          if (_alphabet) {
            fail("generators declared twice", kw);
          }
          expect(":");
          std::vector<std::string> names;
          std::vector<Token>       where;
          where.push_back(peek());
          names.push_back(ident("a generator name"));
          while (at(",")) {
            next();
            where.push_back(peek());
            names.push_back(ident("a generator name"));
          }
          for (size_t i = 0; i < names.size(); ++i) {
            for (size_t j = 0; j < i; ++j) {
              if (names[i] == names[j]) {
                fail("duplicate generator \"" + names[i] + "\"", where[i]);
              }
            }
          }
          _alphabet = Alphabet(std::move(names));
        } else if (!_alphabet) {
          fail("generators must be declared first", kw);
        } else if (kw.text == "fixed" || kw.text == "iterated") {
          bool& seen = kw.text == "fixed" ? seen_fixed : seen_iterated;
          if (seen) {
            fail(kw.text + " declared twice", kw);
          }
          seen = true;
          expect(":");
          auto words = word_list();
          (kw.text == "fixed" ? fixed : iterated) = std::move(words);
        } else if (kw.text == "endomorphism") {
          Token const nt   = peek();
          std::string ename = ident("an endomorphism name");
          for (auto const& e : endos) {
            if (e.name == ename) {
              fail("endomorphism \"" + ename + "\" declared twice", nt);
            }
          }
          expect(":");
          std::vector<std::optional<Word>> images(_alphabet->size());
          do {
            if (at(",")) {
              next();
            }
            Token const gt = peek();
            std::string g  = ident("a generator name");
            auto        i  = _alphabet->index_of(g);
            if (!i) {
              fail("unknown generator \"" + g + "\"", gt);
            }
            if (images[*i]) {
              fail("image of \"" + g + "\" given twice", gt);
            }
            expect("->");
            images[*i] = word();
          } while (at(","));
          std::vector<Word> imgs;
          for (size_t i = 0; i < images.size(); ++i) {
            if (!images[i]) {
              fail("endomorphism \"" + ename + "\" has no image for \""
                       + _alphabet->name(i) + "\"",
                   nt);
            }
            imgs.push_back(std::move(*images[i]));
          }
          endos.push_back({ename, FreeEndomorphism(std::move(imgs))});
        } else if (kw.text == "invariant") {
          if (seen_invariant) {
            fail("invariant declared twice", kw);
          }
          seen_invariant = true;
          expect(":");
          Token const vt = peek();
          std::string v  = ident("true or false");
          if (v != "true" && v != "false") {
            fail("expected true or false", vt);
          }
          invariant = v == "true";
        } else {
          fail("unknown section \"" + kw.text + "\"", kw);
        }
        expect(";");
      }
      expect("}");
      if (peek().kind != tok::end) {
        unexpected("end of input");
      }
      if (!_alphabet) {
        fail("no generators declared", peek());
      }
      return LPresentation(std::move(name),
                           *_alphabet,
                           std::move(fixed),
                           std::move(endos),
                           std::move(iterated),
                           invariant);
    }

  }  // namespace

  LPresentation parse(std::string_view text) {
    return Parser(text).presentation();
  }

  Word parse_word(std::string_view text, Alphabet const& alphabet) {
    Parser p(text);
    p.set_alphabet(alphabet);
    return p.single_word();
  }

  namespace {
    std::string serialize(LPresentation const&            lp,
                          std::vector<std::string> const& fixed,
                          std::vector<std::string> const& iterated) {
      auto const& x   = lp.alphabet();
      auto        csv = [](std::vector<std::string> const& items) {
        std::string out;
        for (auto const& item : items) {
          out += (out.empty() ? "" : ", ") + item;
        }
        return out;
      };
      std::string out = "group " + lp.name() + " {\n  generators: ";
      for (size_t i = 0; i < x.size(); ++i) {
        out += (i == 0 ? "" : ", ") + x.name(i);
      }
      out += ";\n  fixed: " + csv(fixed) + ";\n";
      for (auto const& e : lp.endomorphisms()) {
        out += "  endomorphism " + e.name + ": ";
        for (size_t i = 0; i < x.size(); ++i) {
          out += (i == 0 ? "" : ", ") + x.name(i) + " -> "
                 + to_string(e.map.image(i), x);
        }
        out += ";\n";
      }
      out += "  iterated: " + csv(iterated) + ";\n";
      out += std::string("  invariant: ") + (lp.invariant() ? "true" : "false")
             + ";\n}\n";
      return out;
    }

    std::vector<std::string> strings(std::vector<Word> const& words,
                                     Alphabet const&          x) {
      std::vector<std::string> out;
      for (auto const& w : words) {
        out.push_back(to_string(w, x));
      }
      return out;
    }
  }  // namespace

  std::string serialize(LPresentation const& lp) {
    return serialize(lp,
                     strings(lp.fixed(), lp.alphabet()),
                     strings(lp.iterated(), lp.alphabet()));
  }

  std::string serialize(AdjustedLPresentation const& adj) {
    auto const&              x = adj.base.alphabet();
    std::vector<std::string> fixed, iterated;
    for (auto const& p : adj.derived_fixed_factors) {
      fixed.push_back(to_string(p, x));
    }
    for (auto const& w : adj.basis_words) {
      fixed.push_back(to_string(PowerProduct{{w, Integer(1)}}, x));
    }
    for (auto const& p : adj.derived_iterated_factors) {
      iterated.push_back(to_string(p, x));
    }
    return serialize(adj.base, fixed, iterated);
  }

}  // namespace lpnq
