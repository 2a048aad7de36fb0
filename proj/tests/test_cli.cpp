#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "json.hpp"

#include "lpnq/cli.hpp"
#include "lpnq/lpres.hpp"

namespace lpnq {

  namespace {
    struct Outcome {
      int         code;
      std::string out;
      std::string err;
    };

    Outcome run(std::vector<std::string> const& args) {
      std::ostringstream out, err;
      int                code = cli::run(args, out, err);
      return {code, out.str(), err.str()};
    }

    std::vector<std::string> lines(std::string const& text) {
      std::vector<std::string> out;
      std::istringstream       in(text);
      for (std::string line; std::getline(in, line);) {
        out.push_back(line);
      }
      return out;
    }

    // Reads "0", "(Z_p)^k", or "Z^r x Z_d1 x ... " back into invariants.
    AbelianInvariants read_invariants(std::string const& s) {
      std::smatch m;
      if (s == "0") {
        return {};
      }
      if (std::regex_match(s, m, std::regex(R"(\(Z_(\d+)\)\^(\d+))"))) {
        return abelian_invariants(
            std::vector<Integer>(std::stoul(m[2]), Integer(m[1].str())), 0);
      }
      AbelianInvariants out;
      std::regex const  part(R"((Z\^(\d+)|Z_(\d+)|Z)( x |$))");
      for (auto it = std::sregex_iterator(s.begin(), s.end(), part);
           it != std::sregex_iterator();
           ++it) {
        auto const& p = *it;
        if (p[2].matched) {
          out.free_rank += std::stoul(p[2]);
        } else if (p[3].matched) {
          out.torsion.emplace_back(p[3].str());
        } else {
          out.free_rank += 1;
        }
      }
      return out;
    }

    AbelianInvariants read_invariants(nlohmann::json const& j) {
      AbelianInvariants out;
      out.free_rank = j["free_rank"].get<size_t>();
      for (auto const& d : j["torsion"]) {
        out.torsion.emplace_back(d.get<long long>());
      }
      return out;
    }

    // Text lines "c=k: ..." with any timing columns removed.
    std::vector<std::pair<size_t, std::string>>
    text_results(std::string const& text) {
      std::vector<std::pair<size_t, std::string>> out;
      std::regex const line(R"(c=(\d+): (.*?)(  t_quotient=.*)?)");
      for (auto const& l : lines(text)) {
        std::smatch m;
        REQUIRE(std::regex_match(l, m, line));
        out.emplace_back(std::stoul(m[1]), m[2].str());
      }
      return out;
    }

    std::filesystem::path write_temp(std::string const& name,
                                     std::string const& text) {
      auto path = std::filesystem::temp_directory_path() / name;
      std::ofstream(path) << text;
      return path;
    }
  }  // namespace

  TEST_CASE("catalog lists five groups", "[cli]") {
    auto const r = run({"catalog"});
    REQUIRE(r.code == 0);
    REQUIRE(lines(r.out)
            == std::vector<std::string>{"grigorchuk",
                                        "twisted_twin",
                                        "grigorchuk_supergroup",
                                        "basilica",
                                        "bsv"});
    auto const j = nlohmann::json::parse(run({"catalog", "--json"}).out);
    REQUIRE(j.size() == 5);
  }

  TEST_CASE("dwyer table for the Grigorchuk group", "[cli]") {
    auto const r = run({"dwyer", "--group", "grigorchuk", "--max-class", "6"});
    REQUIRE(r.code == 0);
    auto const l = lines(r.out);
    REQUIRE(l.size() == 6);
    REQUIRE(l.front() == "c=1: Z_2");
    REQUIRE(l.back() == "c=6: (Z_2)^5");
  }

  TEST_CASE("text and JSON agree", "[cli]") {
    for (auto const& [group, n] : {std::pair{"basilica", "8"},
                                   std::pair{"bsv", "6"},
                                   std::pair{"grigorchuk", "6"}}) {
      auto const text = run({"dwyer", "--group", group, "--max-class", n});
      auto const js   = run(
          {"dwyer", "--group", group, "--max-class", n, "--json"});
      REQUIRE(text.code == 0);
      REQUIRE(js.code == 0);
      auto const j = nlohmann::json::parse(js.out);
      REQUIRE(j["group"] == group);
      auto const t = text_results(text.out);
      REQUIRE(t.size() == j["results"].size());
      for (size_t k = 0; k < t.size(); ++k) {
        auto const& row = j["results"][k];
        REQUIRE(row["c"].get<size_t>() == t[k].first);
        auto const a = read_invariants(t[k].second);
        REQUIRE(a == read_invariants(row));
        if (auto e = a.elementary()) {
          REQUIRE(row["ranks_if_elementary"]["p"] == 2);
          REQUIRE(row["ranks_if_elementary"]["rank"] == e->second);
        } else {
          REQUIRE(row["ranks_if_elementary"].is_null());
        }
        REQUIRE(row["t_quotient_ms"].is_null());
      }
    }
  }

  TEST_CASE("timing adds columns only", "[cli]") {
    std::vector<std::string> args
        = {"dwyer", "--group", "bsv", "--max-class", "5"};
    auto plain = run(args);
    args.push_back("--timing");
    auto timed = run(args);
    REQUIRE(timed.code == 0);
    REQUIRE(text_results(plain.out) == text_results(timed.out));
    for (auto const& l : lines(timed.out)) {
      REQUIRE(std::regex_search(
          l, std::regex(R"(  t_quotient=\d+\.\d\dms  t_dwyer=\d+\.\d\dms$)")));
    }
    args.push_back("--json");
    auto const j = nlohmann::json::parse(run(args).out);
    for (auto const& row : j["results"]) {
      REQUIRE(row["t_quotient_ms"].is_number());
      REQUIRE(row["t_dwyer_ms"].get<double>() >= 0);
    }
  }

  TEST_CASE("adjust prints the adjusted presentation", "[cli]") {
    auto const r = run({"adjust", "--group", "grigorchuk"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("fixed: b^2*(b*c*d)^-2*c^2*d^2, a^2, b*c*d, c^2, d^2;")
            != std::string::npos);
    REQUIRE(r.out.find(
                "iterated: (a*d)^4*a^-4*d^-4, (a*d*a*c*a*c)^4*a^-12*c^-8*d^-4;")
            != std::string::npos);
    auto const lp = parse(r.out);
    auto const x  = lp.alphabet();
    auto       as_words = [&](std::vector<std::string> const& ss) {
      std::vector<Word> out;
      for (auto const& s : ss) {
        out.push_back(parse_word(s, x));
      }
      return out;
    };
    REQUIRE(lp.fixed()
            == as_words({"b^2*d^-1*c^-1*b^-1*d^-1*c^-1*b^-1*c^2*d^2",
                         "a^2",
                         "b*c*d",
                         "c^2",
                         "d^2"}));
    REQUIRE(lp.iterated()
            == as_words({"a*d*a*d*a*d*a*d*a^-4*d^-4",
                         "a*d*a*c*a*c*a*d*a*c*a*c*a*d*a*c*a*c*a*d*a*c*a*c"
                         "*a^-12*c^-8*d^-4"}));
    REQUIRE(lp.invariant());

    auto const j = nlohmann::json::parse(
        run({"adjust", "--group", "basilica", "--json"}).out);
    REQUIRE(j["basis"].empty());
    REQUIRE(j["derived_fixed"].empty());
    REQUIRE(j["derived_iterated"].size() == 1);
    REQUIRE(j["hirsch"] == 2);
  }

  TEST_CASE("nq prints lower central factors", "[cli]") {
    auto const r = run({"nq", "--group", "grigorchuk", "--max-class", "4"});
    REQUIRE(r.code == 0);
    REQUIRE(lines(r.out)
            == std::vector<std::string>{
                "w=1: (Z_2)^3", "w=2: (Z_2)^2", "w=3: (Z_2)^2", "w=4: Z_2"});
    auto const j = nlohmann::json::parse(
        run({"nq", "--group", "basilica", "--max-class", "2", "--json"}).out);
    REQUIRE(j["factors"][0]["free_rank"] == 2);
    REQUIRE(j["factors"][1]["free_rank"] == 1);
  }

  TEST_CASE("check-conjecture", "[cli]") {
    auto grig = run({"check-conjecture", "--group", "grigorchuk",
                     "--max-class", "11"});
    REQUIRE(grig.code == 0);
    auto l = lines(grig.out);
    REQUIRE(l.size() == 12);
    for (size_t k = 0; k < 11; ++k) {
      REQUIRE(l[k].ends_with("| PASS"));
    }
    REQUIRE(l.back() == "all computed classes agree");

    auto bas = run({"check-conjecture", "--group", "basilica",
                    "--max-class", "7"});
    REQUIRE(bas.code == 0);
    REQUIRE(lines(bas.out)[0] == "c=1: 0 | no closed form | SKIP");
    REQUIRE(lines(bas.out)[6] == "c=7: Z^2 x Z_4 | Z^2 x Z_4 | PASS");

    auto bsv = run({"check-conjecture", "--group", "bsv", "--max-class", "5",
                    "--json"});
    REQUIRE(bsv.code == 0);
    auto const j = nlohmann::json::parse(bsv.out);
    REQUIRE(j["first_mismatch"].is_null());
    REQUIRE(j["results"][4]["status"] == "PASS");
  }

  TEST_CASE("presentation files", "[cli]") {
    auto const good = write_temp("lpnq_test_grigorchuk.lp",
                                 serialize(catalog("grigorchuk")));
    auto const from_file
        = run({"dwyer", "--file", good.string(), "--max-class", "4"});
    auto const from_group
        = run({"dwyer", "--group", "grigorchuk", "--max-class", "4"});
    REQUIRE(from_file.code == 0);
    REQUIRE(from_file.out == from_group.out);

    auto const renamed = write_temp(
        "lpnq_test_renamed.lp",
        "group other { generators: a; fixed: a^2; iterated: ; "
        "invariant: true; }");
    auto const r = run(
        {"check-conjecture", "--file", renamed.string(), "--max-class", "2"});
    REQUIRE(r.code == cli::exit_usage);
    REQUIRE(r.err.find("no closed form") != std::string::npos);
  }

  TEST_CASE("exit codes", "[cli]") {
    REQUIRE(run({}).code == cli::exit_usage);
    REQUIRE(run({"frobnicate"}).code == cli::exit_usage);
    REQUIRE(run({"dwyer", "--group", "grigorchuk"}).code == cli::exit_usage);
    REQUIRE(run({"dwyer", "--group", "nope", "--max-class", "2"}).code
            == cli::exit_usage);
    REQUIRE(run({"dwyer", "--max-class", "2"}).code == cli::exit_usage);
    REQUIRE(run({"dwyer", "--group", "bsv", "--max-class", "0"}).code
            == cli::exit_usage);
    REQUIRE(run({"adjust", "--file", "/nonexistent/lpnq.lp"}).code
            == cli::exit_usage);
    REQUIRE(run({"catalog", "--help"}).code == cli::exit_ok);

    auto const broken = write_temp("lpnq_test_broken.lp",
                                   "group g {\n  generators: a;\n  fixed: a^;\n}");
    auto const parse_error = run({"adjust", "--file", broken.string()});
    REQUIRE(parse_error.code == cli::exit_usage);
    REQUIRE(parse_error.err.find(broken.string() + ":3:") != std::string::npos);

    auto const not_invariant = write_temp(
        "lpnq_test_noninvariant.lp",
        "group g { generators: a, b; fixed: a^2; "
        "endomorphism s: a -> b, b -> a; iterated: ; }");
    auto const computation
        = run({"dwyer", "--file", not_invariant.string(), "--max-class", "2"});
    REQUIRE(computation.code == cli::exit_computation);
    REQUIRE_FALSE(computation.err.empty());
  }

}  // namespace lpnq
