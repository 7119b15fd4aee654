#include "pmotif/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmotif/descriptor.hpp"
#include "pmotif/elementary.hpp"
#include "pmotif/error.hpp"
#include "pmotif/lattice.hpp"
#include "pmotif/seifert.hpp"

namespace pmotif::cli {

using json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code = kOk;
  json data = json::object();
  std::string text;
};

using Input = std::variant<ElementaryLink, MotifDescriptor, TorusDiagram>;

bool looks_like_file(const std::string& arg) {
  return arg.ends_with(".json") || (arg.find('(') == std::string::npos && std::filesystem::is_regular_file(arg));
}

Input read_input(const std::string& arg) {
  if (looks_like_file(arg)) return read_diagram_file(arg);
  try {
    return parse_elementary(arg);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Parse) throw;
  }
  MotifDescriptor d = parse_descriptor(arg);
  if (is_bare_elementary(d)) return d.body.front().link.value();
  return d;
}

const char* kind_name(const Input& in) {
  switch (in.index()) {
    case 0: return "link";
    case 1: return "descriptor";
    default: return "diagram";
  }
}

json vec_json(const IntVec& v) { return json(v); }
json vec_json(Vec2 v) { return json::array({v[0], v[1]}); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json link_json(const ElementaryLink& l) {
  return {{"link", format_elementary(l)},
          {"family", std::string(to_string(l.family()))},
          {"params", vec_json(l.params())},
          {"ambient", std::string(to_string(l.ambient()))},
          {"components", components(l)}};
}

json diagram_json(const TorusDiagram& d) { return json::parse(diagram_to_json(d)); }

std::string verdict_name(Verdict v) { return std::string(to_string(v)); }

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Yes: return kOk;
    case Verdict::No: return kNegative;
    case Verdict::Unknown: return kUnknown;
  }
  return kUnknown;
}

int verdict_code(SearchVerdict v) {
  return v == SearchVerdict::Yes ? kOk : v == SearchVerdict::No ? kNegative : kUnknown;
}

Ambient parse_ambient_name(const std::string& s) {
  if (s == "solid" || s == "SolidTorus" || s == "S1xD2") return Ambient::SolidTorus;
  if (s == "thickened" || s == "ThickenedTorus" || s == "T2xI") return Ambient::ThickenedTorus;
  if (s == "3torus" || s == "ThreeTorus" || s == "T3") return Ambient::ThreeTorus;
  throw Error(ErrorKind::Parse, "unknown ambient '" + s + "' (solid, thickened, 3torus)");
}

// ---------------------------------------------------------------- commands

Outcome cmd_canon(const std::string& arg) {
  auto link = parse_elementary(arg);
  Outcome o;
  o.data = link_json(link);
  o.data["input"] = arg;
  o.text = format_elementary(link);
  return o;
}

Outcome cmd_lift(const std::string& arg, const std::string& lattice_text) {
  Input in = read_input(arg);
  Matrix basis = parse_matrix(lattice_text);
  Outcome o;
  o.data["kind"] = kind_name(in);
  if (auto* link = std::get_if<ElementaryLink>(&in)) {
    auto up = lift(*link, basis);
    o.data["lattice"] = format_lattice(Lattice::from_basis(basis));
    o.data["index"] = determinant(basis);
    o.data["result"] = link_json(up);
    o.text = format_elementary(up);
  } else if (auto* desc = std::get_if<MotifDescriptor>(&in)) {
    auto up = lift_descriptor(*desc, basis);
    o.data["lattice"] = format_lattice(Lattice::from_basis(basis));
    o.data["result"] = format_descriptor(up);
    o.text = format_descriptor(up);
  } else {
    Lattice cover = Lattice::from_basis(basis);
    if (cover.basis() != basis)
      throw Error(ErrorKind::InvalidParams, "diagram covers take a Hermite basis; use " + format_lattice(cover));
    auto up = lift_diagram(std::get<TorusDiagram>(in), cover);
    o.data["lattice"] = format_lattice(cover);
    o.data["crossings"] = up.crossing_count();
    o.data["result"] = diagram_json(up);
    o.text = diagram_to_json(up, 1);
  }
  return o;
}

Outcome cmd_twist(const std::string& arg, const std::string& matrix_text) {
  Input in = read_input(arg);
  Matrix a = parse_matrix(matrix_text);
  Outcome o;
  o.data["kind"] = kind_name(in);
  o.data["matrix"] = matrix_json(a);
  if (auto* link = std::get_if<ElementaryLink>(&in)) {
    auto t = dehn_twist(*link, a);
    o.data["result"] = link_json(t);
    o.text = format_elementary(t);
  } else if (std::holds_alternative<MotifDescriptor>(in)) {
    throw Error(ErrorKind::InvalidParams, "twist takes a link or a diagram file");
  } else {
    auto t = dehn_twist_diagram(std::get<TorusDiagram>(in), a);
    o.data["result"] = diagram_json(t);
    o.text = diagram_to_json(t, 1);
  }
  return o;
}

json witness_json(const ScaleWitness& w) {
  json j{{"degree0", w.degree0}, {"degree1", w.degree1}};
  if (w.twist0) j["twist0"] = matrix_json(*w.twist0);
  if (w.twist1) j["twist1"] = matrix_json(*w.twist1);
  if (w.lattice0) j["lattice0"] = format_lattice(*w.lattice0);
  if (w.lattice1) j["lattice1"] = format_lattice(*w.lattice1);
  if (w.common) j["common"] = format_elementary(*w.common);
  return j;
}

Outcome cmd_equiv(const std::string& a, const std::string& b, std::optional<Int> bound, bool twists) {
  Input x = read_input(a);
  Input y = read_input(b);
  Outcome o;
  if (x.index() != y.index() && !(x.index() < 2 && y.index() < 2))
    throw Error(ErrorKind::InvalidParams,
                std::string("cannot compare a ") + kind_name(x) + " with a " + kind_name(y));
  o.data["kind"] = kind_name(x);
  if (x.index() == 0 && y.index() == 0) {
    auto r = scale_equivalent(std::get<ElementaryLink>(x), std::get<ElementaryLink>(y), bound.value_or(64));
    o.code = verdict_code(r.verdict);
    o.data["verdict"] = verdict_name(r.verdict);
    if (!r.reason.empty()) o.data["reason"] = r.reason;
    o.text = verdict_name(r.verdict);
    if (r.witness) {
      o.data["witness"] = witness_json(*r.witness);
      o.text += "\nwitness degrees " + std::to_string(r.witness->degree0) + "," + std::to_string(r.witness->degree1);
      if (r.witness->common) o.text += "; common cover " + format_elementary(*r.witness->common);
    }
    if (!r.reason.empty()) o.text += "\n" + r.reason;
    return o;
  }
  if (x.index() == 2) {
    SearchBudget budget;
    if (const char* env = std::getenv(kBudgetVariable)) budget = parse_budget(env, budget);
    if (bound) budget.max_depth = static_cast<int>(*bound);
    const auto& d0 = std::get<TorusDiagram>(x);
    const auto& d1 = std::get<TorusDiagram>(y);
    auto r = equivalence_search(d0, d1, twists, budget);
    o.code = verdict_code(r.verdict);
    o.data["verdict"] = to_string(r.verdict);
    o.data["allow_twists"] = twists;
    o.data["states"] = r.states;
    o.text = to_string(r.verdict);
    if (r.verdict == SearchVerdict::No) {
      o.data["invariant"] = r.invariant;
      o.data["detail"] = r.detail;
      o.text += "\nseparating invariant: " + r.invariant + " " + r.detail;
    } else if (r.verdict == SearchVerdict::Unknown) {
      o.data["detail"] = r.detail;
      o.text += "\n" + r.detail;
    } else {
      const auto& cert = *r.certificate;
      json m0 = json::array(), m1 = json::array();
      for (const auto& m : cert.moves0) m0.push_back(format_move(m));
      for (const auto& m : cert.moves1) m1.push_back(format_move(m));
      o.data["certificate"] = {{"moves0", m0}, {"moves1", m1}, {"twist", matrix_json(cert.twist)}};
      o.data["replayed"] = replay(d0, d1, cert);
      o.text += "\nmoves on first: " + m0.dump() + "\nmoves on second: " + m1.dump() +
                "\ntwist: " + format_matrix(cert.twist);
    }
    return o;
  }
  auto as_descriptor = [](const Input& in) {
    if (auto* l = std::get_if<ElementaryLink>(&in)) return bare_descriptor(*l);
    return std::get<MotifDescriptor>(in);
  };
  bool same = descriptor_equivalent(as_descriptor(x), as_descriptor(y));
  o.code = same ? kOk : kNegative;
  o.data["verdict"] = same ? "Yes" : "No";
  o.data["reason"] = "descriptor comparison (isotopy of pieces up to relabeling)";
  o.text = same ? "Yes" : "No";
  return o;
}

Outcome cmd_minimal(const std::string& arg) {
  Input in = read_input(arg);
  Outcome o;
  o.data["kind"] = kind_name(in);
  if (auto* link = std::get_if<ElementaryLink>(&in)) {
    auto m = minimal_motif(*link);
    o.data["motif"] = format_elementary(m.link);
    o.data["status"] = std::string(to_string(m.status));
    json alts = json::array();
    for (const auto& a : m.alternatives) alts.push_back(format_elementary(a));
    o.data["alternatives"] = alts;
    if (!m.note.empty()) o.data["note"] = m.note;
    o.text = format_elementary(m.link) + " (" + std::string(to_string(m.status)) + ")";
    for (const auto& a : m.alternatives) o.text += "\nalternative: " + format_elementary(a);
    if (!m.note.empty()) o.text += "\n" + m.note;
    return o;
  }
  if (std::holds_alternative<TorusDiagram>(in)) throw Error(ErrorKind::InvalidParams, "minimal takes a link or descriptor");
  auto m = minimal_motif_descriptor(std::get<MotifDescriptor>(in));
  o.data["status"] = std::string(to_string(m.status));
  if (m.motif) o.data["motif"] = format_descriptor(*m.motif);
  json alts = json::array();
  for (const auto& a : m.alternatives) alts.push_back(format_descriptor(a));
  o.data["alternatives"] = alts;
  if (m.bound > 0) o.data["bound"] = m.bound;
  if (!m.note.empty()) o.data["note"] = m.note;
  o.text = (m.motif ? format_descriptor(*m.motif) : std::string("no motif determined")) + " (" +
           std::string(to_string(m.status)) + ")";
  if (m.bound > 0) o.text += "\ncover degree bound " + std::to_string(m.bound);
  if (!m.note.empty()) o.text += "\n" + m.note;
  if (m.status == DescriptorMotif::Status::Unknown) o.code = kUnknown;
  return o;
}

Outcome cmd_bound(const std::string& arg) {
  Input in = read_input(arg);
  if (std::holds_alternative<TorusDiagram>(in)) throw Error(ErrorKind::InvalidParams, "bound takes a descriptor");
  MotifDescriptor d = std::holds_alternative<ElementaryLink>(in) ? bare_descriptor(std::get<ElementaryLink>(in))
                                                                 : std::get<MotifDescriptor>(in);
  auto b = cover_degree_bound(d);
  Outcome o;
  o.data["kind"] = std::string(to_string(b.kind));
  if (b.kind == DegreeBound::Kind::Finite) o.data["value"] = b.value;
  json rules = json::array();
  for (const auto& [name, value] : b.rules) rules.push_back({{"rule", name}, {"value", value}});
  o.data["rules"] = rules;
  o.text = b.kind == DegreeBound::Kind::Finite ? std::to_string(b.value) : std::string(to_string(b.kind));
  for (const auto& [name, value] : b.rules) o.text += "\n" + name + ": " + std::to_string(value);
  if (b.kind == DegreeBound::Kind::Unknown) o.code = kUnknown;
  return o;
}

Outcome cmd_lattices(int dim, Int n) {
  auto all = enumerate_sublattices(dim, n);
  Outcome o;
  o.data["dim"] = dim;
  o.data["index"] = n;
  o.data["count"] = all.size();
  json list = json::array();
  for (const auto& l : all) {
    list.push_back(format_lattice(l));
    o.text += (o.text.empty() ? "" : "\n") + format_lattice(l);
  }
  o.data["lattices"] = list;
  return o;
}

Outcome cmd_invariants(const std::string& path) {
  TorusDiagram d = read_diagram_file(path);
  require_valid(d);
  Outcome o;
  auto classes = homology_multiset(d);
  auto lk = linking_matrix(d);
  json hom = json::array();
  for (Vec2 v : classes) hom.push_back(vec_json(v));
  o.data["crossings"] = d.crossing_count();
  o.data["faces"] = faces(d).size();
  o.data["components"] = components(d);
  o.data["homology"] = hom;
  o.data["linking_matrix"] = lk;
  o.data["hash"] = format_hash(canonical_hash(d));
  std::ostringstream os;
  os << "crossings " << d.crossing_count() << "\nfaces " << faces(d).size() << "\ncomponents " << components(d)
     << "\nhomology " << hom.dump() << "\nlinking " << json(lk).dump() << "\nhash "
     << format_hash(canonical_hash(d));
  o.text = os.str();
  return o;
}

Outcome cmd_seifert(const std::string& arg, const std::optional<std::string>& ambient) {
  SeifertSymbol s = normalize_seifert(parse_seifert(arg));
  Outcome o;
  o.data["input"] = arg;
  o.data["normalized"] = format_seifert(s);
  o.data["exceptional"] = std::string(to_string(s.exceptional));
  o.data["shifted"] = s.shifted;
  o.text = format_seifert(s);
  if (ambient) {
    Ambient amb = parse_ambient_name(*ambient);
    auto a = is_jsj_admissible(s, amb);
    o.data["admissibility"] = {{"ambient", std::string(to_string(amb))},
                               {"admissible", a.admissible},
                               {"exception", a.exception},
                               {"reason", a.reason}};
    o.text += std::string("\n") + (a.admissible ? "admissible" : "not admissible") + " in " +
              std::string(to_string(amb)) + (a.exception ? " (with exception)" : "");
    if (!a.reason.empty()) o.text += "\n" + a.reason;
    if (!a.admissible) o.code = kNegative;
  }
  return o;
}

Outcome cmd_dot(const std::string& path) {
  TorusDiagram d = read_diagram_file(path);
  Outcome o;
  o.text = diagram_to_dot(d);
  o.data["dot"] = o.text;
  return o;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAdmissible:
    case ErrorKind::NoCommonQuotient: return kNegative;
    default: return kInputError;
  }
}

}  // namespace

SearchBudget parse_budget(std::string_view text, SearchBudget base) {
  std::string_view rest = text;
  while (!rest.empty()) {
    size_t comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::Parse, "budget items look like key=value");
    std::string_view key = item.substr(0, eq);
    std::string_view val = item.substr(eq + 1);
    long long n = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), n);
    if (ec != std::errc{} || ptr != val.data() + val.size() || n < 0)
      throw Error(ErrorKind::Parse, "budget value for '" + std::string(key) + "' must be a non-negative integer");
    if (key == "depth") base.max_depth = static_cast<int>(n);
    else if (key == "extra") base.extra_crossings = static_cast<int>(n);
    else if (key == "crossings") base.max_crossings = static_cast<int>(n);
    else if (key == "states") base.max_states = static_cast<std::size_t>(n);
    else throw Error(ErrorKind::Parse, "unknown budget key '" + std::string(key) + "'");
  }
  return base;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Motifs of periodic tangles: canonical forms, covers, bounds and torus diagrams", "pmotif"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

  std::string a, b, lattice_text, matrix_text;
  std::optional<Int> bound;
  std::optional<std::string> ambient;
  bool twists = false;
  int dim = 2;
  Int index = 1;

  auto* canon = app.add_subcommand("canon", "canonical form of an elementary link");
  canon->add_option("link", a, "e.g. T0(3,3)")->required();
  auto* lift_cmd = app.add_subcommand("lift", "lift a link, descriptor or diagram file through a cover");
  lift_cmd->add_option("input", a)->required();
  lift_cmd->add_option("--lattice", lattice_text, "cover basis, e.g. [[2,0],[0,1]] or 3")->required();
  auto* twist = app.add_subcommand("twist", "apply an SL(n,Z) twist");
  twist->add_option("input", a)->required();
  twist->add_option("--matrix", matrix_text)->required();
  auto* equiv = app.add_subcommand("equiv", "decide equivalence of two motifs");
  equiv->add_option("a", a)->required();
  equiv->add_option("b", b)->required();
  equiv->add_option("--bound", bound, "search bound (links: cover degree, diagrams: depth)");
  equiv->add_flag("--twists", twists, "allow Dehn twists between diagrams");
  auto* minimal = app.add_subcommand("minimal", "minimal motif of a link or descriptor");
  minimal->add_option("input", a)->required();
  auto* bound_cmd = app.add_subcommand("bound", "covering-degree bound of a descriptor");
  bound_cmd->add_option("descriptor", a)->required();
  auto* lattices = app.add_subcommand("lattices", "all sublattices of a given index");
  lattices->add_option("dim", dim)->required()->check(CLI::Range(1, 3));
  lattices->add_option("index", index)->required()->check(CLI::PositiveNumber);
  auto* invariants = app.add_subcommand("invariants", "invariants of a diagram file");
  invariants->add_option("diagram", a)->required();
  auto* seifert = app.add_subcommand("seifert", "normal form and JSJ admissibility of a Seifert symbol");
  seifert->add_option("symbol", a)->required();
  seifert->add_option("--ambient", ambient, "solid, thickened or 3torus");
  auto* dot = app.add_subcommand("dot", "Graphviz rendering of a diagram file");
  dot->add_option("diagram", a)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kInputError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  Outcome o;
  try {
    if (chosen == canon) o = cmd_canon(a);
    else if (chosen == lift_cmd) o = cmd_lift(a, lattice_text);
    else if (chosen == twist) o = cmd_twist(a, matrix_text);
    else if (chosen == equiv) o = cmd_equiv(a, b, bound, twists);
    else if (chosen == minimal) o = cmd_minimal(a);
    else if (chosen == bound_cmd) o = cmd_bound(a);
    else if (chosen == lattices) o = cmd_lattices(dim, index);
    else if (chosen == invariants) o = cmd_invariants(a);
    else if (chosen == seifert) o = cmd_seifert(a, ambient);
    else o = cmd_dot(a);
  } catch (const Error& e) {
    o.code = exit_code_for(e.kind());
    o.data = json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
    o.text.clear();
    if (format == "text") err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
  }

  if (format == "json") {
    json envelope{{"command", chosen->get_name()}, {"exit_code", o.code}};
    for (auto& [key, value] : o.data.items()) envelope[key] = value;
    out << envelope.dump(2) << "\n";
  } else if (!o.text.empty()) {
    out << o.text << (o.text.back() == '\n' ? "" : "\n");
  }
  return o.code;
}

}  // namespace pmotif::cli
