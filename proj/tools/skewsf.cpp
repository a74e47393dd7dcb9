// skewsf: semifields from skew polynomial rings.
//
//   skewsf semifield --q 2 --n 2 --d 2 --f "1 + 2*t + t^2" nuclei|mzlm|eigenring|table|check
//   skewsf classify --q 3 --d 2 [--n 2] [--reps]
//   skewsf verify [paper-table|odoni|isotopy16|all] [--long]
//
// Exit codes: 0 success, 1 usage or parse error, 2 mathematical precondition
// failure (or a failed verification), 3 resource bound.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "skewsf/classify.hpp"
#include "skewsf/codec.hpp"
#include "skewsf/semifield.hpp"
#include "skewsf/verify.hpp"

namespace {

using namespace skewsf;
using json = codec::json;

enum Exit { kOk = 0, kUsage = 1, kMath = 2, kBound = 3 };

struct Common {
  std::uint64_t q = 0;
  unsigned n = 2;
  unsigned d = 0;
  unsigned sigma = 1;
  std::string format = "json";
  std::uint64_t seed = 1;
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stoull(v);
  } catch (...) {
    throw parse_error(std::string(name) + " must be a nonnegative integer");
  }
}

std::string element_list(const Tower& T, const std::vector<SkewPoly>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ", ") + std::to_string(poly_index(T, x));
  return "{" + s + "}";
}

json poly_array(const std::vector<SkewPoly>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(codec::format(x));
  return a;
}

int run_semifield(const Common& c, const std::string& ftext, const std::string& side, const std::string& action) {
  if (c.q == 0 || c.d == 0) throw parse_error("--q and --d are required");
  const auto [p, h] = prime_power(c.q);
  auto T = build_tower(p, h, c.n);
  const SkewRing R(T, AutoPower{c.sigma});
  SkewPoly f = codec::parse_skew(ftext, *T);
  if (f.degree() != static_cast<int>(c.d))
    throw precondition_error("f has degree " + std::to_string(f.degree()) + " but --d is " + std::to_string(c.d));

  if (!is_irreducible(R, f)) {
    json err = {{"error", "f is reducible"}, {"f", codec::format(f)}};
    if (auto fac = find_right_factor(R, R.monic(f)))
      err["factorization"] = {{"left", codec::format(fac->first)}, {"right", codec::format(fac->second)}};
    std::cerr << err.dump(2) << "\n";
    return kMath;
  }
  f = R.monic(f);
  const Semifield Sr(R, f);
  const Semifield S = side == "left" ? left_division_variant(Sr) : Sr;

  if (action == "mzlm") {
    const CentralPoly m = mzlm(R, f);
    if (c.format == "plain")
      std::cout << codec::format(m) << "\n";
    else
      emit({{"f", codec::format(f)}, {"mzlm", codec::format(m)}, {"coeffs", m.c}});
    return kOk;
  }
  if (action == "eigenring") {
    const auto E = eigenring(R, f);
    const auto elems = E.elements(*T);
    if (c.format == "plain") {
      std::cout << "dimension " << E.basis.size() << ", size " << elems.size() << "\n";
      for (const auto& e : elems) std::cout << codec::format(e) << "\n";
    } else {
      emit({{"f", codec::format(f)},
            {"dimension", E.basis.size()},
            {"size", elems.size()},
            {"basis", poly_array(E.basis)},
            {"elements", poly_array(elems)}});
    }
    return kOk;
  }
  if (action == "table") {
    std::cout << codec::table_csv(S);
    return kOk;
  }
  if (action == "check") {
    const auto rep = check_axioms(S, CheckOptions{kExhaustiveBound, 20000, c.seed});
    if (c.format == "plain") {
      for (const auto& a : rep.results)
        std::cout << a.axiom << " " << (a.pass ? "pass" : "FAIL " + a.witness) << "\n";
    } else {
      json j = codec::to_json(rep);
      j["semifield"] = codec::to_json(S);
      emit(j);
    }
    return rep.all_pass() ? kOk : kMath;
  }
  if (action == "nuclei") {
    const Nucleus kinds[] = {Nucleus::centre, Nucleus::left, Nucleus::middle, Nucleus::right};
    const char* keys[] = {"Z", "Nl", "Nm", "Nr"};
    json sizes, sets;
    bool match = true;
    std::ostringstream plain;
    for (int k = 0; k < 4; ++k) {
      const auto brute = nucleus(S, kinds[k]);
      match = match && brute == nucleus_theory(S, kinds[k]);
      sizes[keys[k]] = brute.size();
      sets[keys[k]] = poly_array(brute);
      plain << keys[k] << "=" << brute.size() << " " << element_list(*T, brute) << "\n";
    }
    if (c.format == "plain") {
      std::cout << plain.str() << "matches theory: " << (match ? "yes" : "no") << "\n";
    } else {
      json j = sizes;
      j["sets"] = sets;
      j["matches_theory"] = match;
      j["semifield"] = codec::to_json(S);
      emit(j);
    }
    return match ? kOk : kMath;
  }
  throw parse_error("unknown semifield action '" + action + "'");
}

int run_classify(const Common& c, bool reps) {
  if (c.q == 0 || c.d == 0) throw parse_error("--q and --d are required");
  const auto rep = orbit_decomposition(c.q, c.d, c.n);
  const auto bounds = bounds_report(c.q, c.n, c.d);
  json reps_json = json::array();
  if (reps) {
    const SkewRing R = default_ring(c.q, c.n, c.sigma);
    for (const auto& r : class_representatives(R, c.d)) {
      json x = {{"mzlm", codec::format(r.hhat)},
                {"orbit_size", r.orbit_size},
                {"f", codec::format(r.f)},
                {"f_index", r.f_index},
                {"semifield", codec::to_json(r.semifield)}};
      const Semifield& S = r.semifield;
      if (S.order() <= kExhaustiveBound) {
        x["axioms_pass"] = check_axioms(S).all_pass();
        x["nuclei"] = {{"Z", nucleus(S, Nucleus::centre).size()},
                       {"Nl", nucleus(S, Nucleus::left).size()},
                       {"Nm", nucleus(S, Nucleus::middle).size()},
                       {"Nr", nucleus(S, Nucleus::right).size()}};
      }
      reps_json.push_back(x);
    }
  }
  if (c.format == "csv") {
    std::cout << "representative,size,members\n";
    for (const auto& o : rep.orbits) {
      std::string members;
      for (const auto& m : o.members) members += (members.empty() ? "" : ";") + codec::format(m);
      std::cout << codec::format(o.representative) << "," << o.size() << "," << members << "\n";
    }
    return kOk;
  }
  if (c.format == "plain") {
    std::cout << "q=" << rep.q << " n=" << rep.n << " d=" << rep.d << "\n"
              << "N=" << rep.N << " theta=" << rep.theta << " M=" << rep.M << "\n"
              << "bounds " << rep.lower.str() << " <= M <= " << rep.upper.str() << "\n"
              << "odoni=" << rep.odoni << "\n";
    for (const auto& o : rep.orbits) std::cout << "orbit " << codec::format(o.representative) << " size " << o.size() << "\n";
    for (const auto& r : reps_json) std::cout << "rep f = " << r["f"].get<std::string>() << "\n";
    return kOk;
  }
  json j = codec::to_json(rep);
  j["bounds_report"] = codec::to_json(bounds);
  if (reps) j["representatives"] = reps_json;
  emit(j);
  return kOk;
}

int run_verify(const Common& c, const std::string& suite, bool long_mode) {
  verify::Options opt;
  opt.seed = c.seed == 1 ? opt.seed : c.seed;
  opt.long_mode = long_mode;
  opt.budget_ms = env_u64("SKEWSF_BUDGET_MS", 0);
  std::vector<verify::Outcome> results;
  json skipped = json::array();
  if (suite == "paper-table") {
    results.push_back(verify::paper_table(opt));
  } else if (suite == "odoni") {
    results.push_back(verify::odoni(opt));
  } else if (suite == "isotopy16") {
    if (long_mode)
      results.push_back(verify::isotopy16(opt));
    else
      skipped.push_back("isotopy16 (needs --long)");
  } else if (suite == "all") {
    for (auto& o : verify::run_all(opt)) {
      if (o.id == 2 && !long_mode) continue;
      results.push_back(std::move(o));
    }
    if (!long_mode) skipped.push_back("isotopy16 (needs --long)");
  } else {
    throw parse_error("unknown verify suite '" + suite + "'");
  }
  bool all = true;
  json arr = json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  if (c.format == "plain") {
    for (const auto& r : results)
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << " " << r.name << ": " << r.detail << "\n";
    for (const auto& s : skipped) std::cout << "SKIP " << s.get<std::string>() << "\n";
  } else {
    emit({{"suite", suite}, {"pass", all}, {"results", arr}, {"skipped", skipped}});
  }
  return all ? kOk : kMath;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semifields from skew polynomial rings"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* sub, bool need_d) {
    sub->add_option("--q", c.q, "order of the fixed field F_q (a prime power)")->required();
    auto* d = sub->add_option("--d", c.d, "degree d");
    if (need_d) d->required();
    sub->add_option("--n", c.n, "degree of K over F_q")->capture_default_str();
    sub->add_option("--sigma", c.sigma, "sigma = x -> x^(q^s)")->capture_default_str();
    sub->add_option("--format", c.format, "json, csv or plain")
        ->check(CLI::IsMember({"json", "csv", "plain"}))
        ->capture_default_str();
    sub->add_option("--seed", c.seed, "seed for sampled checks")->capture_default_str();
  };

  auto* sf = app.add_subcommand("semifield", "construct S_f and report invariants");
  add_common(sf, true);
  std::string ftext, side = "right", action;
  sf->add_option("--f", ftext, "f as \"c0 + c1*t + ...\" or a JSON list")->required();
  sf->add_option("--side", side, "right or left division")->check(CLI::IsMember({"right", "left"}))->capture_default_str();
  sf->add_option("action", action, "nuclei, mzlm, eigenring, table or check")
      ->required()
      ->check(CLI::IsMember({"nuclei", "mzlm", "eigenring", "table", "check"}));

  auto* cl = app.add_subcommand("classify", "orbit counting and isotopy class representatives");
  add_common(cl, true);
  bool reps = false;
  cl->add_flag("--reps", reps, "construct one semifield per orbit");

  auto* vf = app.add_subcommand("verify", "run the reproduction battery");
  std::string suite = "all";
  bool long_mode = false;
  vf->add_option("suite", suite, "paper-table, odoni, isotopy16 or all")
      ->check(CLI::IsMember({"paper-table", "odoni", "isotopy16", "all"}))
      ->capture_default_str();
  vf->add_flag("--long", long_mode, "include the order-16 spread set search");
  vf->add_option("--format", c.format, "json or plain")->check(CLI::IsMember({"json", "plain"}))->capture_default_str();
  vf->add_option("--seed", c.seed, "seed for sampled checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    env_u64("SKEWSF_THREADS", 1);
    if (sf->parsed()) return run_semifield(c, ftext, side, action);
    if (cl->parsed()) return run_classify(c, reps);
    if (vf->parsed()) return run_verify(c, suite, long_mode);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const bound_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBound;
  } catch (const skewsf::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMath;
  }
  return kUsage;
}
