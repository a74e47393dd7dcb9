#ifndef SKEWSF_CODEC_HPP
#define SKEWSF_CODEC_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "skewsf/classify.hpp"
#include "skewsf/error.hpp"
#include "skewsf/gf.hpp"
#include "skewsf/semifield.hpp"
#include "skewsf/semilinear.hpp"
#include "skewsf/skewpoly.hpp"

namespace skewsf::codec {

using json = nlohmann::ordered_json;

/// Descending terms with implicit unit coefficients: "t^2 + 2*t + 1".
inline std::string format_poly(const std::vector<Elem>& c, char var) {
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += " + ";
    const std::string mono = i == 0 ? "" : (i == 1 ? std::string(1, var) : std::string(1, var) + "^" + std::to_string(i));
    if (i == 0)
      out += std::to_string(c[i]);
    else if (c[i] == 1)
      out += mono;
    else
      out += std::to_string(c[i]) + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

inline std::string format(const SkewPoly& f) { return format_poly(f.c, 't'); }
inline std::string format(const CentralPoly& f) { return format_poly(f.c, 'y'); }

/// Accepts "c0 + c1*t + c2*t^2" in any term order, bare "t" or "t^k",
/// "-" for negated terms, or a JSON list constant term first. Coefficients
/// are element codes below `F.order()`.
inline std::vector<Elem> parse_poly(const std::string& text, char var, const Field& F) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  std::vector<Elem> c;
  auto check = [&](std::uint64_t v) {
    if (v >= F.order()) throw parse_error("coefficient " + std::to_string(v) + " is not an element code");
    return static_cast<Elem>(v);
  };
  if (pos < text.size() && text[pos] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const std::exception& e) {
      throw parse_error(std::string("bad coefficient list: ") + e.what());
    }
    if (!j.is_array()) throw parse_error("coefficient list must be an array");
    for (const auto& x : j) {
      if (!x.is_number_unsigned()) throw parse_error("coefficients must be nonnegative integers");
      c.push_back(check(x.get<std::uint64_t>()));
    }
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
  }

  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> std::uint64_t {
    skip();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) throw parse_error("expected a number in '" + text + "'");
    std::uint64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (v > UINT32_MAX) throw parse_error("number too large");
      ++pos;
    }
    return v;
  };
  bool first = true;
  for (;;) {
    skip();
    if (pos >= text.size()) break;
    bool negate = false;
    if (!first) {
      if (text[pos] != '+' && text[pos] != '-') throw parse_error("expected '+' or '-' in '" + text + "'");
      negate = text[pos] == '-';
      ++pos;
      skip();
    } else if (text[pos] == '-') {
      negate = true;
      ++pos;
      skip();
    }
    first = false;
    std::uint64_t coef = 1;
    std::size_t power = 0;
    bool have_coef = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coef = number();
      have_coef = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip();
        if (pos >= text.size() || text[pos] != var) throw parse_error(std::string("expected '") + var + "' after '*'");
      }
    }
    if (pos < text.size() && text[pos] == var) {
      ++pos;
      power = 1;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        power = static_cast<std::size_t>(number());
      }
    } else if (!have_coef) {
      throw parse_error("unexpected character in '" + text + "'");
    }
    if (power > 4096) throw parse_error("exponent too large");
    if (c.size() <= power) c.resize(power + 1, 0);
    Elem v = check(coef);
    if (negate) v = F.neg(v);
    c[power] = F.add(c[power], v);
  }
  if (first) throw parse_error("empty polynomial");
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

inline SkewPoly parse_skew(const std::string& text, const Tower& T) { return SkewPoly(parse_poly(text, 't', T.K())); }
inline CentralPoly parse_central(const std::string& text, const Tower& T) {
  return CentralPoly(parse_poly(text, 'y', T.Fq()));
}

inline json to_json(const FieldDesc& d) {
  return {{"p", d.p}, {"h", d.h}, {"n", d.n}, {"modulus_q", d.modulus_q}, {"modulus_K", d.modulus_K}};
}

inline FieldDesc desc_from_json(const json& j) {
  try {
    return {j.at("p").get<std::uint32_t>(), j.at("h").get<unsigned>(), j.at("n").get<unsigned>(),
            j.at("modulus_q").get<std::vector<Elem>>(), j.at("modulus_K").get<std::vector<Elem>>()};
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad field descriptor: ") + e.what());
  }
}

inline json to_json(const Semifield& S) {
  return {{"field", to_json(S.tower().desc())},
          {"sigma_s", S.ring().sigma().s},
          {"f", S.f().c},
          {"side", to_string(S.side())}};
}

inline Semifield semifield_from_json(const json& j) {
  try {
    auto T = build_tower(desc_from_json(j.at("field")));
    const std::string side = j.value("side", "right");
    if (side != "right" && side != "left") throw parse_error("side must be 'right' or 'left'");
    SkewRing R(T, AutoPower{j.at("sigma_s").get<unsigned>()});
    SkewPoly f(j.at("f").get<std::vector<Elem>>());
    for (Elem c : f.c)
      if (c >= T->Q()) throw parse_error("coefficient is not an element code");
    return Semifield(R, f, side == "right" ? Side::right : Side::left);
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad semifield descriptor: ") + e.what());
  }
}

inline json to_json(const SemilinearMap& T) {
  return {{"A", T.A.data()}, {"sigma_s", T.sigma.s}};
}

inline SemilinearMap semilinear_from_json(const json& j, std::shared_ptr<const Tower> T) {
  try {
    const auto a = j.at("A").get<std::vector<Elem>>();
    std::size_t d = 0;
    while (d * d < a.size()) ++d;
    if (d * d != a.size() || d == 0) throw parse_error("A must be a square matrix in row-major order");
    Matrix A(d, d);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] >= T->Q()) throw parse_error("matrix entry is not an element code");
      A(k / d, k % d) = a[k];
    }
    return {std::move(T), std::move(A), AutoPower{j.at("sigma_s").get<unsigned>()}};
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad semilinear map: ") + e.what());
  }
}

inline json fraction_json(const Fraction& f) {
  return {{"num", f.num}, {"den", f.den}, {"value", f.value()}};
}

inline json to_json(const OrbitReport& r) {
  json orbits = json::array();
  for (const auto& o : r.orbits) {
    json members = json::array();
    for (const auto& m : o.members) members.push_back(format(m));
    orbits.push_back({{"representative", format(o.representative)}, {"size", o.size()}, {"members", members}});
  }
  return {{"q", r.q},         {"h", r.h},
          {"n", r.n},         {"d", r.d},
          {"N", r.N},         {"theta", r.theta},
          {"M", r.M},         {"bounds", {{"lower", fraction_json(r.lower)}, {"upper", fraction_json(r.upper)}}},
          {"orbits", orbits}, {"odoni", r.odoni}};
}

inline json to_json(const BoundsReport& b) {
  return {{"q", b.q},
          {"n", b.n},
          {"d", b.d},
          {"kantor_liebler", b.kantor_liebler},
          {"dempwolff", b.dempwolff},
          {"M", b.M},
          {"lower", fraction_json(b.lower)},
          {"phi_n_half_M", fraction_json(b.phi_n_half_M)},
          {"total_bound", b.total},
          {"chain_ok", b.chain_ok}};
}

inline json to_json(const AxiomReport& r) {
  json axioms = json::array();
  for (const auto& a : r.results) {
    json x = {{"axiom", a.axiom}, {"pass", a.pass}};
    if (!a.pass) x["witness"] = a.witness;
    axioms.push_back(x);
  }
  return {{"all_pass", r.all_pass()}, {"sampled", r.sampled}, {"axioms", axioms}};
}

/// CSV with rows and columns indexed by element codes.
inline std::string table_csv(const Semifield& S, std::uint64_t bound = std::uint64_t{1} << 8) {
  if (S.order() > bound) throw bound_error("multiplication table exceeds export bound");
  std::string out = "o";
  for (std::uint64_t b = 0; b < S.order(); ++b) out += "," + std::to_string(b);
  out += "\n";
  for (std::uint64_t a = 0; a < S.order(); ++a) {
    out += std::to_string(a);
    for (std::uint64_t b = 0; b < S.order(); ++b) out += "," + std::to_string(S.mul_index(a, b));
    out += "\n";
  }
  return out;
}

}  // namespace skewsf::codec

#endif  // SKEWSF_CODEC_HPP
