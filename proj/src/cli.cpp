#include "lpnq/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "lpnq/conjecture.hpp"
#include "lpnq/dwyer.hpp"
#include "lpnq/lpres.hpp"
#include "lpnq/nq.hpp"

namespace lpnq::cli {

  using json = nlohmann::ordered_json;

  namespace {

    class UsageError : public std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    struct Options {
      std::string group;
      std::string file;
      size_t      max_class = 0;
      bool        as_json   = false;
      bool        timing    = false;
      unsigned    jobs      = 1;
    };

    LPresentation load(Options const& o) {
      if (o.group.empty() == o.file.empty()) {
        throw UsageError("exactly one of --group and --file is required");
      }
      if (!o.file.empty()) {
        std::ifstream in(o.file);
        if (!in) {
          throw UsageError("cannot read " + o.file);
        }
        std::stringstream text;
        text << in.rdbuf();
        try {
          return parse(text.str());
        } catch (ParseError const& e) {
          throw UsageError(o.file + ":" + std::to_string(e.line()) + ":"
                           + std::to_string(e.column()) + ": " + e.message());
        }
      }
      try {
        return catalog(o.group);
      } catch (std::invalid_argument const& e) {
        throw UsageError(e.what());
      }
    }

    json integer_json(Integer const& i) {
      if (i <= std::numeric_limits<std::int64_t>::max()
          && i >= std::numeric_limits<std::int64_t>::min()) {
        return static_cast<std::int64_t>(i);
      }
      return i.str();
    }

    void put_invariants(json& j, AbelianInvariants const& a) {
      j["free_rank"] = a.free_rank;
      j["torsion"]   = json::array();
      for (auto const& d : a.torsion) {
        j["torsion"].push_back(integer_json(d));
      }
      if (auto e = a.elementary()) {
        j["ranks_if_elementary"] = {{"p", integer_json(e->first)},
                                    {"rank", e->second}};
      } else {
        j["ranks_if_elementary"] = nullptr;
      }
    }

    std::string milliseconds(double ms) {
      std::ostringstream s;
      s << std::fixed << std::setprecision(2) << ms;
      return s.str();
    }

    double elapsed_ms(std::chrono::steady_clock::time_point start) {
      return std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - start)
          .count();
    }

    void run_catalog(Options const& o, std::ostream& out) {
      if (o.as_json) {
        out << json(catalog_names()).dump(2) << '\n';
        return;
      }
      for (auto const& name : catalog_names()) {
        out << name << '\n';
      }
    }

    void run_adjust(Options const& o, std::ostream& out) {
      AdjustedLPresentation const adj = adjust(load(o));
      if (!o.as_json) {
        out << serialize(adj);
        return;
      }
      auto const& x = adj.base.alphabet();
      json        j;
      j["group"]            = adj.base.name();
      j["derived_fixed"]    = json::array();
      j["basis"]            = json::array();
      j["derived_iterated"] = json::array();
      for (auto const& p : adj.derived_fixed_factors) {
        j["derived_fixed"].push_back(to_string(p, x));
      }
      for (auto const& w : adj.basis_words) {
        j["basis"].push_back(to_string(w, x));
      }
      for (auto const& p : adj.derived_iterated_factors) {
        j["derived_iterated"].push_back(to_string(p, x));
      }
      j["hirsch"] = adj.hirsch;
      out << j.dump(2) << '\n';
    }

    void run_nq(Options const& o, std::ostream& out) {
      LPresentation const lp    = load(o);
      auto const          start = std::chrono::steady_clock::now();
      NilpotentQuotient const q
          = nilpotent_quotient(lp, o.max_class, {o.jobs});
      auto const   factors = lcs_factors(q.presentation);
      double const t       = elapsed_ms(start);
      if (o.as_json) {
        json j;
        j["group"]           = lp.name();
        j["nilpotency_class"] = q.presentation.nilpotency_class();
        j["factors"]         = json::array();
        for (size_t w = 0; w < factors.size(); ++w) {
          json f;
          f["weight"] = w + 1;
          put_invariants(f, factors[w]);
          j["factors"].push_back(std::move(f));
        }
        j["t_quotient_ms"] = o.timing ? json(t) : json(nullptr);
        out << j.dump(2) << '\n';
        return;
      }
      for (size_t w = 0; w < factors.size(); ++w) {
        out << "w=" << w + 1 << ": " << render(factors[w]) << '\n';
      }
      if (o.timing) {
        out << "t_quotient=" << milliseconds(t) << "ms\n";
      }
    }

    void run_dwyer(Options const& o, std::ostream& out) {
      LPresentation const lp = load(o);
      DwyerTower          tower(lp, {o.jobs});
      json                results = json::array();
      for (size_t c = 1; c <= o.max_class; ++c) {
        DwyerResult const& r = tower.next();
        if (o.as_json) {
          json j;
          j["c"] = c;
          put_invariants(j, r.invariants);
          j["t_quotient_ms"] = o.timing ? json(r.t_quotient_ms) : json(nullptr);
          j["t_dwyer_ms"]    = o.timing ? json(r.t_dwyer_ms) : json(nullptr);
          results.push_back(std::move(j));
          continue;
        }
        out << "c=" << c << ": " << render(r.invariants);
        if (o.timing) {
          out << "  t_quotient=" << milliseconds(r.t_quotient_ms)
              << "ms  t_dwyer=" << milliseconds(r.t_dwyer_ms) << "ms";
        }
        out << std::endl;
      }
      if (o.as_json) {
        out << json{{"group", lp.name()}, {"results", results}}.dump(2)
            << '\n';
      }
    }

    bool run_check(Options const& o, std::ostream& out) {
      LPresentation const lp     = load(o);
      auto const          groups = conjecture_groups();
      if (std::find(groups.begin(), groups.end(), lp.name()) == groups.end()) {
        throw UsageError("no closed form is known for \"" + lp.name() + "\"");
      }
      DwyerTower            tower(lp, {o.jobs});
      std::optional<size_t> mismatch;
      json                  results = json::array();
      for (size_t c = 1; c <= o.max_class; ++c) {
        DwyerResult const& r      = tower.next();
        auto const         expect = conjectured_dwyer_quotient(lp.name(), c);
        char const*        status = !expect                   ? "SKIP"
                                    : *expect == r.invariants ? "PASS"
                                                              : "FAIL";
        if (expect && !(*expect == r.invariants) && !mismatch) {
          mismatch = c;
        }
        if (o.as_json) {
          json j;
          j["c"] = c;
          put_invariants(j, r.invariants);
          if (expect) {
            json e;
            put_invariants(e, *expect);
            j["conjectured"] = std::move(e);
          } else {
            j["conjectured"] = nullptr;
          }
          j["status"]        = status;
          j["t_quotient_ms"] = o.timing ? json(r.t_quotient_ms) : json(nullptr);
          j["t_dwyer_ms"]    = o.timing ? json(r.t_dwyer_ms) : json(nullptr);
          results.push_back(std::move(j));
          continue;
        }
        out << "c=" << c << ": " << render(r.invariants) << " | "
            << (expect ? render(*expect) : std::string("no closed form"))
            << " | " << status;
        if (o.timing) {
          out << "  t_quotient=" << milliseconds(r.t_quotient_ms)
              << "ms  t_dwyer=" << milliseconds(r.t_dwyer_ms) << "ms";
        }
        out << std::endl;
      }
      if (o.as_json) {
        json j;
        j["group"]          = lp.name();
        j["results"]        = std::move(results);
        j["first_mismatch"] = mismatch ? json(*mismatch) : json(nullptr);
        out << j.dump(2) << '\n';
      } else if (mismatch) {
        out << "first mismatch at c=" << *mismatch << '\n';
      } else {
        out << "all computed classes agree\n";
      }
      return !mismatch;
    }

  }  // namespace

  std::string render(AbelianInvariants const& a) {
    if (auto e = a.elementary(); e && e->second > 1) {
      return "(Z_" + e->first.str() + ")^" + std::to_string(e->second);
    }
    return a.to_string();
  }

  int run(std::vector<std::string> const& args,
          std::ostream&                   out,
          std::ostream&                   err) {
    Options  o;
    CLI::App app("Nilpotent quotients and Dwyer quotients of invariant "
                 "finite L-presentations",
                 "lpnq");
    app.require_subcommand(1);

    auto add_source = [&o](CLI::App* sub) {
      auto* g = sub->add_option("--group", o.group, "Built-in presentation");
      auto* f = sub->add_option("--file", o.file, "Presentation file");
      g->excludes(f);
    };
    auto add_run = [&o](CLI::App* sub) {
      sub->add_option("--max-class", o.max_class, "Largest class")
          ->required()
          ->check(CLI::PositiveNumber);
      sub->add_flag("--timing", o.timing, "Report wall-clock times");
      sub->add_option("--jobs", o.jobs, "Worker threads")
          ->check(CLI::PositiveNumber);
    };

    auto* nq = app.add_subcommand("nq", "Lower central series factors");
    auto* dw = app.add_subcommand("dwyer", "Dwyer quotients M_c for c=1..N");
    auto* ad = app.add_subcommand("adjust", "Adjusted presentation");
    auto* ct = app.add_subcommand("catalog", "List built-in presentations");
    auto* ck = app.add_subcommand("check-conjecture",
                                  "Compare M_c with the conjectured closed form");
    for (auto* sub : {nq, dw, ad, ck}) {
      add_source(sub);
    }
    for (auto* sub : {nq, dw, ck}) {
      add_run(sub);
    }
    for (auto* sub : {nq, dw, ad, ct, ck}) {
      sub->add_flag("--json", o.as_json, "JSON output");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }

    try {
      if (ct->parsed()) {
        run_catalog(o, out);
      } else if (ad->parsed()) {
        run_adjust(o, out);
      } else if (nq->parsed()) {
        run_nq(o, out);
      } else if (dw->parsed()) {
        run_dwyer(o, out);
      } else if (!run_check(o, out)) {
        return exit_mismatch;
      }
    } catch (UsageError const& e) {
      err << "lpnq: " << e.what() << '\n';
      return exit_usage;
    } catch (std::exception const& e) {
      err << "lpnq: " << e.what() << '\n';
      return exit_computation;
    }
    return exit_ok;
  }

}  // namespace lpnq::cli
