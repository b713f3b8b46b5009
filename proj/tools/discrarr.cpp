// Command-line front end. Exit codes: 0 computed, 1 negative verdict of a yes/no
// subcommand, 2 usage or parse error, 3 search budget exhausted.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "discrarr/arrangement.hpp"
#include "discrarr/discriminantal.hpp"
#include "discrarr/enumerate.hpp"
#include "discrarr/errors.hpp"
#include "discrarr/io.hpp"
#include "discrarr/parallel.hpp"
#include "discrarr/presentation.hpp"
#include "discrarr/render.hpp"
#include "discrarr/varieties.hpp"

using namespace discrarr;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Config {
  std::string subcommand;
  std::string input;
  std::string output;
  std::string family;
  std::string translation;
  std::optional<int> r;
  std::optional<int> from;
  std::optional<int> to;
  std::optional<int> n;
  std::optional<int> k;
  std::uint64_t seed = 0;
  std::string field = "Q";
  std::size_t budget = 1'000'000;
  int nprime_max = 8;
  int height = 30;
  int width = 640;
  bool json = false;
};

std::string shell_quote(const std::string& s) {
  if (!s.empty() && s.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-./:,") ==
                        std::string::npos)
    return s;
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

// One command line that reproduces the run, with every default resolved.
std::string config_echo(const Config& c) {
  std::ostringstream out;
  out << "discrarr " << c.subcommand;
  auto opt = [&](const char* flag, const std::string& v) {
    if (!v.empty()) out << ' ' << flag << ' ' << shell_quote(v);
  };
  auto num = [&](const char* flag, const std::optional<int>& v) {
    if (v) out << ' ' << flag << ' ' << *v;
  };
  opt("--input", c.input);
  opt("--translation", c.translation);
  opt("--family", c.family);
  num("--n", c.n);
  num("--k", c.k);
  num("--r", c.r);
  num("--from", c.from);
  num("--to", c.to);
  out << " --seed " << c.seed << " --field " << c.field << " --budget " << c.budget << " --nprime-max " << c.nprime_max
      << " --height " << c.height << " --width " << c.width;
  opt("--output", c.output);
  if (c.json) out << " --json";
  return out.str();
}

Arrangement load_arrangement(const Config& c) {
  if (c.input.empty()) throw std::invalid_argument("--input is required");
  return arrangement_from_json(read_file(c.input));
}

// Named shortcut or literal text, in the context [n] with rank k.
Presentation load_family(const Config& c, int n, int k) {
  if (c.family.empty()) throw std::invalid_argument("--family is required");
  if (const auto spec = named_family(c.family)) {
    const auto& p = spec->presentation;
    if (p.support().size() > 0 && p.support().indices().back() > n)
      throw std::invalid_argument(c.family + " needs at least " + std::to_string(p.n()) + " hyperplanes");
    return p.with_context(n, k);
  }
  return parse_presentation(c.family, n, k);
}

// --n, else the named family's size, else the largest index in the text.
int family_context_n(const Config& c, int k) {
  if (c.n) return *c.n;
  if (const auto spec = named_family(c.family)) return spec->presentation.n();
  const auto support = parse_presentation(c.family, IndexSet::kMaxIndex - 1, k).support();
  return support.size() == 0 ? 0 : support.indices().back();
}

// Writes the payload to --output or stdout.
void emit_payload(const Config& c, const std::string& payload) {
  if (c.output.empty())
    std::cout << payload << (payload.empty() || payload.back() == '\n' ? "" : "\n");
  else
    write_file(c.output, payload);
}

struct Report {
  json j = json::object();
  std::vector<std::pair<std::string, std::string>> lines;

  template <class T>
  void add(const std::string& key, const T& value, const std::string& human) {
    j[key] = value;
    lines.emplace_back(key, human);
  }
  void print(const Config& c, const std::string& echo) const {
    if (c.json) {
      json out = j;
      out["config"] = echo;
      std::cout << out.dump() << "\n";
      return;
    }
    std::cout << "# " << echo << "\n";
    for (const auto& [k, v] : lines) std::cout << k << ": " << v << "\n";
  }
};

int cmd_circuits(const Config& c, Report& rep) {
  const auto a = load_arrangement(c);
  json list = json::array();
  std::string human;
  for (const auto& s : circuits(a)) {
    list.push_back(s.indices());
    human += (human.empty() ? "" : ",") + s.to_string(s.indices().back() > 9);
  }
  rep.add("n", a.n(), std::to_string(a.n()));
  rep.add("k", a.k(), std::to_string(a.k()));
  const bool generic = is_generic(a);
  rep.add("generic", generic, generic ? "true" : "false");
  rep.add("circuits", list, human);
  return kOk;
}

int cmd_rank(const Config& c, Report& rep) {
  const auto a = load_arrangement(c);
  const auto t = load_family(c, a.n(), a.k());
  const auto field = FieldMode::parse(c.field);
  const auto rank = intersection_rank(a, t.members(), field);
  rep.add("family", t.to_string(), t.to_string());
  rep.add("field", field.label(), field.to_string());
  rep.add("nu", nu(t), std::to_string(nu(t)));
  rep.add("rank", rank, std::to_string(rank));
  return kOk;
}

int cmd_bba(const Config& c, Report& rep) {
  const int k = c.k.value_or(2);
  const auto t = load_family(c, family_context_n(c, k), k);
  if (!validate_q(t)) throw std::invalid_argument("family is not in Q(n,k): " + t.to_string());
  const auto v = bba_check(t);
  rep.add("family", t.to_string(), t.to_string());
  rep.add("bba", v.ok, v.ok ? "true" : "false");
  if (v.witness) rep.add("witness", v.witness->to_string(), v.witness->to_string());
  return v.ok ? kOk : kNegative;
}

int cmd_membership(const Config& c, Report& rep) {
  const auto a = load_arrangement(c);
  const auto t = load_family(c, a.n(), a.k());
  const auto field = FieldMode::parse(c.field);
  const auto v = membership(a, VarietyQuery{t, c.r}, field, c.budget);
  rep.add("family", t.to_string(), t.to_string());
  rep.add("r", v.r, std::to_string(v.r));
  rep.add("member", v.member, v.member ? "true" : "false");
  rep.add("certificate", v.rank_certificate, std::to_string(v.rank_certificate));
  rep.add("field", v.field.label(), v.field.to_string());
  return v.member ? kOk : kNegative;
}

int cmd_classify(const Config& c, Report& rep) {
  const auto a = load_arrangement(c);
  const auto field = FieldMode::parse(c.field);
  const auto report = audit_arrangement(a, c.nprime_max, field, worker_count());
  json hits = json::array();
  std::string human;
  for (const auto& h : report.hits) {
    hits.push_back({{"family", h.family_name}, {"labels", h.labels}, {"r", h.r}, {"rank", h.rank}});
    std::string labels;
    for (int l : h.labels) labels += (labels.empty() ? "" : " ") + std::to_string(l);
    human += "\n  " + h.family_name + " labels [" + labels + "] image " + h.image.to_string() + " r " +
             std::to_string(h.r) + " rank " + std::to_string(h.rank);
  }
  rep.add("arrangement", c.input, c.input);
  rep.add("field", field.label(), field.to_string());
  rep.add("classes", report.classes, std::to_string(report.classes));
  rep.add("images", report.images, std::to_string(report.images));
  rep.add("hits", hits, std::to_string(report.hits.size()) + human);
  rep.add("note", AuditReport::kScopeNote, AuditReport::kScopeNote);
  return kOk;
}

int cmd_degenerate(const Config& c, Report& rep) {
  if (!c.from || !c.to) throw std::invalid_argument("--from and --to are required");
  const auto t = load_family(c, *c.from, c.k.value_or(2));
  const auto d = degenerate(t, *c.from, *c.to);
  rep.add("family", t.to_string(), t.to_string());
  rep.add("result", d.result.to_string(), d.result.to_string());
  rep.add("gamma", d.gamma, std::to_string(d.gamma));
  return kOk;
}

int cmd_sample(const Config& c, Report& rep) {
  SampledArrangement s{Arrangement(2, {}), 0};
  if (!c.family.empty()) {
    const auto spec = named_family(c.family);
    if (!spec) throw std::invalid_argument("sample --family needs a named family, got '" + c.family + "'");
    s = solve_on_variety(*spec, c.seed, c.height);
  } else {
    if (!c.n) throw std::invalid_argument("sample needs --n or --family");
    s = random_generic(*c.n, c.k.value_or(2), c.seed, c.height);
  }
  const auto text = arrangement_to_json(s.arrangement);
  rep.add("resamples", s.resamples, std::to_string(s.resamples));
  if (c.output.empty()) {
    rep.add("arrangement", json::parse(text), text);
  } else {
    write_file(c.output, text + "\n");
    rep.add("output", c.output, c.output);
  }
  return kOk;
}

TranslationVector load_translation(const Config& c, const Arrangement& a, Report& rep) {
  if (!c.translation.empty()) return translation_from_json(read_file(c.translation));
  if (c.family.empty()) throw std::invalid_argument("--translation or --family is required");
  const auto t = load_family(c, a.n(), a.k());
  const auto found = representative(a, t, c.seed, static_cast<int>(std::min<std::size_t>(c.budget, 1'000'000)));
  if (!found.witness)
    throw BudgetExhausted("no translation with presentation " + t.to_string() + " after " +
                          std::to_string(found.attempts) + " attempts");
  rep.add("translation", json::parse(translation_to_json(*found.witness))["t"], translation_to_json(*found.witness));
  return *found.witness;
}

int cmd_canonical(const Config& c, Report& rep) {
  const auto a = load_arrangement(c);
  const auto t = load_translation(c, a, rep);
  const auto p = canonical_presentation(a, t);
  rep.add("presentation", p.to_string(), p.to_string());
  return kOk;
}

int cmd_render(const Config& c) {
  const auto a = load_arrangement(c);
  Report unused;
  const auto t = load_translation(c, a, unused);
  RenderOptions options;
  options.width_px = c.width;
  emit_payload(c, render_svg(a, t, options));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discriminantal arrangements: intersection ranks, singularity varieties and audits"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--input", c.input, "arrangement JSON file");
  app.add_option("--output", c.output, "output file (render, sample)");
  app.add_option("--family", c.family, "presentation text or a named family (W6, Wd8_4, W8, L8, DW10, ...)");
  app.add_option("--translation", c.translation, "translation JSON file");
  app.add_option("--r", c.r, "variety threshold; defaults to min_nu_above - 1");
  app.add_option("--from", c.from, "degeneration source index");
  app.add_option("--to", c.to, "degeneration target index");
  app.add_option("--n", c.n, "number of hyperplanes");
  app.add_option("--k", c.k, "ambient dimension");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--field", c.field, "Q, Fp or Fp:<prime>");
  app.add_option("--budget", c.budget, "search budget");
  app.add_option("--nprime-max", c.nprime_max, "largest family support searched by classify");
  app.add_option("--height", c.height, "entry bound for sampled normals");
  app.add_option("--width", c.width, "SVG width in pixels");
  app.add_flag("--json", c.json, "JSON report");

  const std::vector<std::pair<const char*, const char*>> subcommands{
      {"circuits", "list the circuits of an arrangement"},
      {"rank", "intersection rank of a family"},
      {"bba", "check the Bayer-Brandt-Athanasiadis condition"},
      {"membership", "membership in a singularity variety"},
      {"classify", "audit an arrangement for non-very generic families"},
      {"degenerate", "degenerate a family from one index to another"},
      {"sample", "seeded generic or on-variety arrangement"},
      {"render", "SVG of a translated line arrangement"},
      {"canonical", "canonical presentation of a translation"},
  };
  for (const auto& [name, help] : subcommands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  c.subcommand = app.get_subcommands().front()->get_name();

  try {
    // Validate the field before anything is printed.
    c.field = FieldMode::parse(c.field).to_string();
    const auto echo = config_echo(c);
    if (c.subcommand == "render") {
      std::cerr << "# " << echo << "\n";
      return cmd_render(c);
    }
    Report rep;
    int code = kOk;
    if (c.subcommand == "circuits") code = cmd_circuits(c, rep);
    else if (c.subcommand == "rank") code = cmd_rank(c, rep);
    else if (c.subcommand == "bba") code = cmd_bba(c, rep);
    else if (c.subcommand == "membership") code = cmd_membership(c, rep);
    else if (c.subcommand == "classify") code = cmd_classify(c, rep);
    else if (c.subcommand == "degenerate") code = cmd_degenerate(c, rep);
    else if (c.subcommand == "sample") code = cmd_sample(c, rep);
    else if (c.subcommand == "canonical") code = cmd_canonical(c, rep);
    rep.print(c, echo);
    return code;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
