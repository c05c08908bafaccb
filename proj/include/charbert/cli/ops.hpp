#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <typeinfo>
#include <vector>

#include "context.hpp"

namespace charbert::cli {

// Stable kebab-case names for library errors, used by {"error": ...} expectations.
inline std::string error_kind(const std::exception& e) {
#define CHARBERT_KIND(Type, name) \
  if (dynamic_cast<const Type*>(&e)) return name
  CHARBERT_KIND(SchemaError, "schema-error");
  CHARBERT_KIND(DomainMismatch, "domain-mismatch");
  CHARBERT_KIND(ParseError, "parse-error");
  CHARBERT_KIND(InvalidPrime, "invalid-prime");
  CHARBERT_KIND(InvalidWitness, "invalid-witness");
  CHARBERT_KIND(WitnessInsufficient, "witness-insufficient");
  CHARBERT_KIND(ZeroIdeal, "zero-ideal");
  CHARBERT_KIND(InfiniteValuation, "infinite-valuation");
  CHARBERT_KIND(NonTorsion, "non-torsion");
  CHARBERT_KIND(UnsupportedRepresentation, "unsupported-representation");
  CHARBERT_KIND(MissingPrime, "missing-prime");
  CHARBERT_KIND(InternalConsistency, "internal-consistency");
  CHARBERT_KIND(ConditionViolation, "condition-violation");
  CHARBERT_KIND(PreconditionError, "precondition");
  CHARBERT_KIND(CapExceeded, "cap-exceeded");
#undef CHARBERT_KIND
  return "error";
}

// The expected values of one check. Every key must be consumed by the
// operation; leftovers are schema errors so typos cannot pass silently.
class Expectations {
 public:
  explicit Expectations(const json& e) : expect_(e) {}

  bool has(const std::string& key) const { return expect_.contains(key); }
  const json& at(const std::string& key) {
    used_.insert(key);
    return expect_.at(key);
  }

  void value(const std::string& key, const json& got) {
    if (!has(key)) return;
    if (at(key) != got) fail(key + ": expected " + expect_.at(key).dump() + ", got " + got.dump());
  }

  void fail(std::string msg) { mismatches_.push_back(std::move(msg)); }

  void finish() const {
    for (const auto& [k, v] : expect_.items())
      if (!used_.count(k)) throw SchemaError("unknown expectation '" + k + "'");
  }

  const std::vector<std::string>& mismatches() const { return mismatches_; }

 private:
  json expect_;
  std::set<std::string> used_;
  std::vector<std::string> mismatches_;
};

// An expected ideal is an ideal expression evaluated in the ring of the result.
template <CoefficientDomain D>
void expect_ideal(Expectations& x, const std::string& key, const Context<D>& ctx, const Ideal<D>& got) {
  if (!x.has(key)) return;
  Ideal<D> want = ctx.ideal(got.ring(), x.at(key));
  if (!(want == got)) x.fail(key + ": expected " + want.to_string() + ", got " + ideal_json(got).dump());
}

template <CoefficientDomain D>
struct OpCall {
  const Context<D>& ctx;
  PresentedRingPtr<D> ring;
  const json& args;
  Expectations& expect;

  const json& arg(const char* key) const { return detail::field(args, key, "args"); }
  bool has(const char* key) const { return args.contains(key); }
  Polynomial<D> poly(const char* key) const { return ctx.poly(ring, arg(key)); }
  Ideal<D> ideal(const char* key) const { return ctx.ideal(ring, arg(key)); }
  ModuleRep<D> module(const char* key) const { return ctx.module(ring, arg(key)); }
  std::vector<Ideal<D>> ideals(const char* key) const {
    return has(key) ? ctx.ideals(ring, arg(key)) : std::vector<Ideal<D>>{};
  }
  unsigned number(const char* key) const { return detail::get<unsigned>(args, key, "args"); }
  unsigned cap() const { return ctx.options().cap_valuation; }
};

template <CoefficientDomain D>
using Op = std::function<json(const OpCall<D>&)>;

namespace ops {

inline json certificate_json(const Certificate& c) {
  json checks = json::array();
  json failing = json::array();
  for (const auto& r : c.checks) {
    json rec = {{"name", r.name}, {"status", to_string(r.status)}};
    if (!r.witness.empty()) rec["witness"] = r.witness;
    checks.push_back(rec);
    if (r.status == Status::fail) failing.push_back(r.name);
  }
  json out = {{"point", c.subject}, {"verdict", to_string(c.verdict())}, {"failing", failing}, {"checks", checks}};
  if (!c.assumptions.empty()) out["assumptions"] = c.assumptions;
  return out;
}

inline LiftMode lift_mode(const json& args, const Options& opt) {
  LiftMode mode;
  if (!args.contains("lift")) return mode;
  const json& l = args.at("lift");
  std::string kind = detail::get<std::string>(l, "mode", "lift");
  if (kind == "teichmuller") mode = LiftMode::teichmuller(detail::get_or(l, "precision", 8u, "lift"));
  else if (kind != "integer") throw SchemaError("lift.mode must be integer or teichmuller");
  if (opt.precision && mode.kind == LiftMode::Kind::teichmuller) mode.precision = *opt.precision;
  return mode;
}

inline ResiduePoint residue_point(const json& j) {
  try {
    return j.get<ResiduePoint>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("point: ") + e.what());
  }
}

template <CoefficientDomain D>
std::map<std::string, Op<D>> table() {
  std::map<std::string, Op<D>> t;

  t["contains"] = [](const OpCall<D>& c) {
    bool in = c.ideal("ideal").contains(c.poly("element"));
    c.expect.value("contains", in);
    return json{{"contains", in}};
  };

  t["ideal-equal"] = [](const OpCall<D>& c) {
    bool eq = c.ideal("left") == c.ideal("right");
    c.expect.value("equal", eq);
    return json{{"equal", eq}};
  };

  t["compare"] = [](const OpCall<D>& c) {
    std::string r = to_string(c.has("cover") ? ideal_compare(c.ideal("left"), c.ideal("right"), c.ideals("cover"), c.cap())
                                             : ideal_compare(c.ideal("left"), c.ideal("right")));
    c.expect.value("comparison", r);
    return json{{"comparison", r}};
  };

  t["reflexive-closure"] = [](const OpCall<D>& c) {
    auto rc = reflexive_closure(c.ideal("ideal"));
    expect_ideal(c.expect, "ideal", c.ctx, rc);
    return json{{"ideal", ideal_json(rc)}};
  };

  t["valuation"] = [](const OpCall<D>& c) {
    unsigned v = c.has("element") ? valuation_at(c.poly("element"), c.ideal("prime"), c.cap())
                                  : valuation_at(c.ideal("ideal"), c.ideal("prime"), c.cap());
    c.expect.value("valuation", v);
    return json{{"valuation", v}};
  };

  t["symbolic-power"] = [](const OpCall<D>& c) {
    auto P = c.ideal("prime");
    unsigned n = c.number("n");
    auto S = symbolic_power(P, n, c.poly("witness"));
    json out = {{"ideal", ideal_json(S)}};
    expect_ideal(c.expect, "ideal", c.ctx, S);
    if (c.has("element")) {
      bool in = S.contains(c.poly("element"));
      out["contains"] = in;
      c.expect.value("contains", in);
    }
    return out;
  };

  t["symbolic-power-contains"] = [](const OpCall<D>& c) {
    bool in = symbolic_power_contains(c.poly("element"), c.ideal("prime"), c.number("n"));
    c.expect.value("contains", in);
    return json{{"contains", in}};
  };

  t["fitting"] = [](const OpCall<D>& c) {
    auto F = fitting_ideal(c.module("module"));
    expect_ideal(c.expect, "ideal", c.ctx, F);
    return json{{"ideal", ideal_json(F)}};
  };

  t["length"] = [](const OpCall<D>& c) {
    unsigned l = length_at(c.module("module"), c.ideal("prime"), c.cap());
    c.expect.value("length", l);
    return json{{"length", l}};
  };

  t["char"] = [](const OpCall<D>& c) {
    auto M = c.module("module");
    auto cover = c.ideals("cover");
    auto r = c.has("cover") ? char_ideal(M, cover, c.cap()) : char_ideal(M);
    json out = {{"ideal", ideal_json(r.ideal)}, {"zero", r.ideal.is_zero()}, {"provenance", r.provenance}};
    if (r.divisors) {
      json d = json::array();
      for (const auto& [P, e] : r.divisors->entries) d.push_back({{"prime", ideal_json(P)}, {"exponent", e}});
      out["divisors"] = d;
    }
    expect_ideal(c.expect, "ideal", c.ctx, r.ideal);
    c.expect.value("zero", out["zero"]);
    c.expect.value("provenance", r.provenance);
    return out;
  };

  t["specialize-char"] = [](const OpCall<D>& c) {
    auto r = specialize_char(c.module("module"), c.poly("x"), c.ideals("cover"), c.cap());
    expect_ideal(c.expect, "ideal", c.ctx, r);
    return json{{"ideal", ideal_json(r)}};
  };

  t["direct-specialized-char"] = [](const OpCall<D>& c) {
    auto r = direct_specialized_char(c.module("module"), c.poly("x"));
    expect_ideal(c.expect, "ideal", c.ctx, r);
    c.expect.value("zero", r.is_zero());
    return json{{"ideal", ideal_json(r)}, {"zero", r.is_zero()}};
  };

  t["control-formula"] = [](const OpCall<D>& c) {
    auto r = check_control_formula(c.module("module"), c.poly("x"), c.ideals("cover"), c.cap());
    c.expect.value("equal", r.equal);
    return json{{"equal", r.equal}, {"direct", ideal_json(r.direct)}, {"predicted", ideal_json(r.predicted)}};
  };

  t["l-set"] = [](const OpCall<D>& c) {
    auto r = l_set_member(c.module("module"), c.poly("x"), c.ideals("cover"), c.cap());
    c.expect.value("member", r.member);
    c.expect.value("torsion", r.torsion);
    c.expect.value("equalities", r.equalities);
    return json{{"member", r.member}, {"torsion", r.torsion}, {"equalities", r.equalities}, {"reasons", r.reasons}};
  };

  t["bad-locus-guard"] = [](const OpCall<D>& c) {
    bool ok = bad_locus_guard(c.module("module"), c.poly("x"));
    c.expect.value("passes", ok);
    return json{{"passes", ok}};
  };

  t["control-check"] = [](const OpCall<D>& c) {
    std::vector<Polynomial<D>> family;
    for (const auto& x : c.arg("family")) family.push_back(c.ctx.poly(c.ring, x));
    auto r = control_check(c.module("M"), c.module("N"), family, c.ideals("cover"), c.cap(), c.ctx.options().jobs);
    json elements = json::array();
    std::size_t checked = 0;
    for (const auto& e : r.elements) {
      json el = {{"x", e.x.to_string()}, {"checked", e.checked}};
      if (e.checked) el["included"] = e.included;
      else el["reason"] = e.reason;
      checked += e.checked;
      elements.push_back(el);
    }
    json out = {{"global_inclusion", r.global_inclusion}, {"verdict", to_string(r.verdict)},
                {"violations", r.violations}, {"checked", checked}, {"elements", elements}};
    c.expect.value("global_inclusion", r.global_inclusion);
    c.expect.value("verdict", to_string(r.verdict));
    c.expect.value("violations", r.violations);
    c.expect.value("checked", checked);
    return out;
  };

  t["differential"] = [](const OpCall<D>& c) {
    auto omega = kahler_presentation(c.ring);
    auto d = omega.differential(c.poly("element"));
    json coords = json::array();
    bool zero = true;
    for (const auto& e : d) {
      coords.push_back(c.ring->normal_form(e).to_string());
      zero = zero && c.ring->is_zero(e);
    }
    c.expect.value("zero", zero);
    return json{{"differential", coords}, {"zero", zero}};
  };

  t["basic"] = [](const OpCall<D>& c) {
    auto omega = kahler_presentation(c.ring);
    bool b = is_basic_at(omega.differential(c.poly("differential_of")), omega, c.ideal("prime"));
    c.expect.value("basic", b);
    return json{{"basic", b}};
  };

  t["singular-locus"] = [](const OpCall<D>& c) {
    json out;
    if constexpr (D::is_field) {
      auto S = singular_ideal(c.ring);
      out["ideal"] = ideal_json(S);
      if (c.expect.has("radical_equal")) {
        auto want = c.ctx.ideal(c.ring, c.expect.at("radical_equal"));
        bool eq = radical_contains(S, want) && radical_contains(want, S);
        if (!eq) c.expect.fail("radical_equal: singular locus " + S.to_string() + " differs from " + want.to_string());
      }
    } else {
      auto loc = singular_ideal(c.ring);
      if (loc.generic) out["generic"] = ideal_json(*loc.generic);
      if (loc.special) out["special"] = ideal_json(*loc.special);
      if (c.expect.has("radical_equal")) {
        auto want = c.ctx.ideal(c.ring, c.expect.at("radical_equal"));
        if (loc.generic) {
          auto w = to_generic(want, loc.generic_ring);
          if (!(radical_contains(*loc.generic, w) && radical_contains(w, *loc.generic)))
            c.expect.fail("radical_equal: generic fiber locus " + loc.generic->to_string() + " differs");
        }
        if (loc.special) {
          auto w = to_special(want, loc.special_ring);
          if (!(radical_contains(*loc.special, w) && radical_contains(w, *loc.special)))
            c.expect.fail("radical_equal: special fiber locus " + loc.special->to_string() + " differs");
        }
      }
    }
    auto codim = singular_codimension(c.ring);
    out["codimension"] = codim.value ? json(*codim.value) : json(nullptr);
    c.expect.value("codimension", out["codimension"]);
    return out;
  };

  t["normal"] = [](const OpCall<D>& c) {
    auto cert = is_normal(c.ring);
    c.expect.value("verdict", to_string(cert.verdict()));
    return certificate_json(cert);
  };

  t["minimal-generators"] = [](const OpCall<D>& c) {
    json out = {{"count", minimal_generator_count(c.ring)}};
    json gens = json::array();
    for (const auto& g : section_generators(c.ring)) gens.push_back(g.to_string());
    out["section_generators"] = gens;
    c.expect.value("count", out["count"]);
    if (c.has("element")) {
      bool m = is_minimal_generator(c.ring, c.poly("element"));
      out["minimal"] = m;
      c.expect.value("minimal", m);
    }
    return out;
  };

  t["certify"] = [](const OpCall<D>& c) {
    std::uint64_t p = detail::get<std::uint64_t>(c.args, "prime", "args");
    HyperplanePoint a(residue_point(c.arg("point")), p, lift_mode(c.args, c.ctx.options()));
    auto target = SectionTarget::parse(detail::get_or<std::string>(c.args, "target", "normal", "args"));
    auto cert = certify_hyperplane(c.ring, a, c.ideals("avoid"), target);
    json out = certificate_json(cert);
    c.expect.value("verdict", out["verdict"]);
    c.expect.value("failing", out["failing"]);
    return out;
  };

  t["enumerate-sections"] = [](const OpCall<D>& c) {
    std::uint64_t p = detail::get<std::uint64_t>(c.args, "prime", "args");
    auto target = SectionTarget::parse(detail::get_or<std::string>(c.args, "target", "normal", "args"));
    EnumerationOptions opt;
    opt.mode = lift_mode(c.args, c.ctx.options());
    opt.cap = c.ctx.options().cap_points;
    opt.jobs = c.ctx.options().jobs;
    if (c.has("expected_open")) {
      try {
        opt.expected = OpenSet{c.arg("expected_open").template get<std::vector<std::vector<std::size_t>>>()};
      } catch (const json::exception& e) {
        throw SchemaError(std::string("expected_open: ") + e.what());
      }
    }
    auto report = enumerate_normal_sections(c.ring, p, c.ideals("avoid"), target, opt);

    json rows = json::array();
    std::size_t expected_size = 0;
    for (std::size_t i = 0; i < report.points.size(); ++i) {
      json row = certificate_json(report.certificates[i]);
      if (opt.expected) {
        bool in = opt.expected->contains(report.points[i].residues());
        row["expected"] = in;
        expected_size += in;
      }
      rows.push_back(row);
    }
    json out = {{"prime", p}, {"target", target.to_string()}, {"lift", opt.mode.to_string()},
                {"points", report.points.size()}, {"passing", report.passing.size()}};
    if (opt.expected) {
      out["expected_size"] = expected_size;
      out["contains_expected"] = report.expected_contained();
    }
    out["rows"] = rows;

    c.expect.value("points", out["points"]);
    c.expect.value("passing", out["passing"]);
    c.expect.value("empty", report.passing.empty());
    if (opt.expected) {
      c.expect.value("expected_size", out["expected_size"]);
      c.expect.value("contains_expected", out["contains_expected"]);
    }
    auto row_of = [&](const json& point) -> const json* {
      std::string name = point_string(normalize_projective(residue_point(point), p));
      for (const auto& r : rows)
        if (r["point"] == name) return &r;
      return nullptr;
    };
    if (c.expect.has("fails")) {
      for (const auto& f : c.expect.at("fails")) {
        const json* r = row_of(detail::field(f, "point", "fails"));
        std::string check = detail::get<std::string>(f, "check", "fails");
        if (!r) {
          c.expect.fail("fails: point " + f["point"].dump() + " was not enumerated");
          continue;
        }
        bool found = false;
        for (const auto& n : (*r)["failing"]) found |= n == check;
        if ((*r)["verdict"] != "fail" || !found)
          c.expect.fail("fails: " + (*r)["point"].get<std::string>() + " did not fail '" + check + "'");
      }
    }
    if (c.expect.has("passing_checks")) {
      // every passing certificate records these checks as passed
      for (const auto& name : c.expect.at("passing_checks")) {
        for (auto i : report.passing) {
          const auto* rec = report.certificates[i].find(name.template get<std::string>());
          if (!rec || rec->status != Status::pass) {
            c.expect.fail("passing_checks: " + report.points[i].to_string() + " lacks a passed '" +
                          name.template get<std::string>() + "'");
            break;
          }
        }
      }
    }
    return out;
  };

  t["teichmuller"] = [](const OpCall<D>& c) {
    std::uint64_t p = detail::get<std::uint64_t>(c.args, "prime", "args");
    unsigned N = c.ctx.options().precision.value_or(detail::get_or(c.args, "precision", 8u, "args"));
    auto w = teichmuller_lift(detail::get<std::uint64_t>(c.args, "residue", "args"), p, N);
    c.expect.value("lift", w.get_str());
    return json{{"lift", w.get_str()}, {"precision", N}};
  };

  return t;
}

}  // namespace ops

template <CoefficientDomain D>
const std::map<std::string, Op<D>>& op_table() {
  static const auto t = ops::table<D>();
  return t;
}

inline std::vector<std::string> op_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : op_table<Rationals>()) out.push_back(k);
  return out;
}

}  // namespace charbert::cli
