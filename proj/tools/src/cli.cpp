#include "opfactor/cli.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "opfactor/ansatz.hpp"
#include "opfactor/expr.hpp"

namespace opfactor::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Options {
  std::string algebra = "weyl";
  std::size_t n = 1;
  std::string q;
  bool one = false;
  bool all = false;
  bool json = false;
  bool verify = false;
  bool bench = false;
  std::optional<unsigned> premultiplier_degree;
  std::uint64_t seed = commfact::kDefaultSeed;
  bool inject_fault = false;
  std::string expression;
};

struct Entry {
  std::optional<CommPoly> premultiplier;
  Factorization f;
};

std::vector<Rational> parse_q(const std::string& text, std::size_t n) {
  std::vector<Rational> q;
  const VarSet none;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const CommPoly c = parse_comm(item, none);
    q.push_back(c.constant_term());
  }
  if (q.size() != n) throw DomainError("--q needs exactly n values");
  return q;
}

AlgebraSpec algebra_of(const Options& o) {
  if (o.n == 0) throw DomainError("--n must be positive");
  if (o.algebra == "weyl") {
    if (!o.q.empty()) throw DomainError("--q only applies to qweyl");
    return AlgebraSpec::weyl(o.n);
  }
  if (o.algebra == "shift") {
    if (!o.q.empty()) throw DomainError("--q only applies to qweyl");
    return AlgebraSpec::shift(o.n);
  }
  if (o.q.empty()) throw DomainError("qweyl needs --q");
  AlgebraSpec a = AlgebraSpec::qweyl(parse_q(o.q, o.n));
  a.validate();
  return a;
}

nlohmann::ordered_json algebra_json(const AlgebraSpec& a) {
  nlohmann::ordered_json j{{"kind", to_string(a.kind)}, {"n", a.n}};
  if (a.kind == AlgebraKind::qweyl) {
    auto qs = nlohmann::ordered_json::array();
    for (const auto& v : a.q) qs.push_back(v.to_string());
    j["q"] = qs;
  }
  return j;
}

std::string factor_list(const Factorization& f) {
  std::string s;
  if (!f.unit.is_one()) s = f.unit.to_string() + " * ";
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    if (i) s += " * ";
    s += "(" + print_canonical(f.factors[i]) + ")";
  }
  return s;
}

// s(x) as an operator
OrePoly x_polynomial(const AlgebraSpec& alg, const CommPoly& s) {
  OrePoly r(alg);
  for (const auto& [e, c] : s.terms())
    r = r + OrePoly::monomial(alg, std::vector<unsigned>(e.begin(), e.end()), std::vector<unsigned>(alg.n, 0), c);
  return r;
}

class Phases {
 public:
  void start(const char* name) {
    name_ = name;
    t0_ = Clock::now();
  }
  void stop() { rows_.emplace_back(name_, std::chrono::duration<double>(Clock::now() - t0_).count()); }
  void print(std::ostream& os) const {
    for (const auto& [n, s] : rows_) os << "bench " << n << " " << s << " s\n";
  }

 private:
  std::string name_;
  Clock::time_point t0_;
  std::vector<std::pair<std::string, double>> rows_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Factor operators in Weyl, shift and graded q-Weyl algebras", "opfactor"};
  app.add_option("--algebra", o.algebra, "weyl, shift or qweyl")->check(CLI::IsMember({"weyl", "shift", "qweyl"}));
  app.add_option("--n", o.n, "number of variable pairs")->required();
  app.add_option("--q", o.q, "comma-separated q_i for qweyl");
  auto* one = app.add_flag("--one", o.one, "stop after the first factorization");
  auto* all = app.add_flag("--all", o.all, "every factorization (default)");
  one->excludes(all);
  app.add_flag("--json", o.json, "JSON output");
  app.add_flag("--verify", o.verify, "re-multiply every factorization");
  app.add_flag("--bench", o.bench, "wall time per phase on stderr");
  app.add_option("--premultiplier-degree", o.premultiplier_degree, "also try x-monomial premultipliers up to this degree");
  app.add_option("--seed", o.seed, "seed for randomized subroutines");
  app.add_flag("--inject-fault", o.inject_fault)->group("");
  app.add_option("expression", o.expression, "operator expression")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "opfactor: " << e.what() << "\n";
    return kExitUsage;
  }

  Phases phases;
  try {
    const AlgebraSpec alg = algebra_of(o);
    if (o.premultiplier_degree && alg.kind != AlgebraKind::weyl)
      throw DomainError("--premultiplier-degree needs the Weyl algebra");

    phases.start("parse");
    const OrePoly h = parse(o.expression, alg);
    phases.stop();

    phases.start("factor");
    const ansatz::Mode mode = o.one ? ansatz::Mode::one : ansatz::Mode::all;
    std::vector<Entry> entries;
    bool irreducible = false;
    std::size_t dropped = 0;
    if (o.premultiplier_degree) {
      for (auto& pf : ansatz::factor_with_premultiplier(h, *o.premultiplier_degree, o.seed))
        entries.push_back({std::move(pf.premultiplier), std::move(pf.factorization)});
      // irreducible means: nothing beyond h itself for s = 1
      irreducible = true;
      for (const auto& e : entries)
        if (!e.premultiplier->is_one() || e.f.factors.size() > 1) irreducible = false;
    } else {
      const ansatz::FactorResult r =
          alg.kind == AlgebraKind::shift ? ansatz::factor_shift(h, mode, o.seed) : ansatz::factor(h, mode, o.seed);
      for (const auto& f : r.factorizations) entries.push_back({std::nullopt, f});
      irreducible = r.irreducible;
      dropped = r.dropped;
    }
    phases.stop();

    if (o.inject_fault && !entries.empty()) entries[0].f.unit += Rational(1);

    if (o.verify) {
      phases.start("verify");
      for (const auto& e : entries) {
        OrePoly target = h;
        if (e.premultiplier) target = x_polynomial(alg, *e.premultiplier) * h;
        if (!(e.f.product(alg) == target)) {
          err << "opfactor: verification failed for " << factor_list(e.f) << "\n";
          return kExitVerify;
        }
      }
      phases.stop();
    }

    phases.start("print");
    if (o.json) {
      nlohmann::ordered_json j;
      j["input"] = print_canonical(h);
      j["algebra"] = algebra_json(alg);
      auto list = nlohmann::ordered_json::array();
      for (const auto& e : entries) {
        nlohmann::ordered_json f;
        f["unit"] = e.f.unit.to_string();
        auto fs = nlohmann::ordered_json::array();
        for (const auto& g : e.f.factors) fs.push_back(print_canonical(g));
        f["factors"] = fs;
        if (e.premultiplier) f["premultiplier"] = e.premultiplier->to_string();
        list.push_back(f);
      }
      j["factorizations"] = list;
      j["irreducible"] = irreducible;
      j["dropped_irrational_branches"] = dropped;
      out << j.dump(2) << "\n";
    } else {
      out << "input: " << print_canonical(h) << "\n";
      out << "algebra: " << to_string(alg.kind) << " n=" << alg.n << "\n";
      if (irreducible) {
        out << "irreducible: " << print_canonical(h) << "\n";
      } else {
        out << "factorizations: " << entries.size() << "\n";
        for (std::size_t i = 0; i < entries.size(); ++i) {
          out << "[" << i + 1 << "] ";
          if (entries[i].premultiplier) out << "premultiplier " << entries[i].premultiplier->to_string() << ": ";
          out << factor_list(entries[i].f) << "\n";
        }
      }
      if (dropped) out << "dropped irrational branches: " << dropped << "\n";
    }
    phases.stop();
  } catch (const ParseError& e) {
    err << "opfactor: parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "opfactor: " << e.what() << "\n";
    return kExitUsage;
  }
  if (o.bench) phases.print(err);
  return kExitOk;
}

}  // namespace opfactor::cli
