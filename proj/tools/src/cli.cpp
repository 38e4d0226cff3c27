#include "gkm/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "gkm/errors.hpp"
#include "gkm/presentation.hpp"

namespace gkm::cli {

namespace {

struct CommonOptions {
  std::string family;
  std::size_t n = 0;
  std::string roots;
  std::string ring;
  unsigned max_degree = 4;
  std::string format;
  std::string out;
  std::size_t max_columns = 0;
  std::size_t max_order = kMaxGroupOrder;
};

std::size_t resolve_max_columns(const CommonOptions& c) {
  if (c.max_columns) return c.max_columns;
  if (const char* env = std::getenv("GKMCOH_MAX_COLUMNS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (!*env || *end || v == 0) throw UsageError("GKMCOH_MAX_COLUMNS must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return kDefaultMaxColumns;
}

GraphPtr resolve_graph(const CommonOptions& c) {
  if (!c.roots.empty()) {
    if (!c.family.empty() && c.family != "custom") throw UsageError("--roots and --family are exclusive");
    return build_from_roots(parse_roots(c.roots), c.max_order);
  }
  if (c.family.empty()) throw UsageError("one of --family or --roots is required");
  Family f = parse_family(c.family);
  if (f == Family::Custom) throw UsageError("family 'custom' needs --roots");
  if (c.n == 0) throw UsageError("--n must be a positive rank");
  return build_graph(f, c.n);
}

Ring resolve_ring(const CommonOptions& c, Family f) {
  if (!c.ring.empty()) return parse_ring(c.ring);
  return f == Family::C ? Ring::Dyadic : Ring::Int;
}

void emit(const std::string& payload, const CommonOptions& c, std::ostream& out) {
  if (c.out.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(c.out);
  if (!file) throw UsageError("cannot write '" + c.out + "'");
  file << payload;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void add_common(CLI::App* cmd, CommonOptions& c, bool with_graph, bool with_degree) {
  if (with_graph) {
    cmd->add_option("--family", c.family, "A, B, C, D or Dminus");
    cmd->add_option("--n", c.n, "rank");
    cmd->add_option("--roots", c.roots, "custom roots, e.g. \"1,-1,0;0,1,-1\"");
    cmd->add_option("--max-order", c.max_order, "group order cap for --roots")->check(CLI::PositiveNumber);
  }
  if (with_degree)
    cmd->add_option("--max-degree", c.max_degree, "largest k (cohomological degree 2k)");
  cmd->add_option("--out", c.out, "write the payload to a file instead of stdout");
  cmd->add_option("--max-columns", c.max_columns, "column cap for lattice computations")
      ->check(CLI::PositiveNumber);
}

// graph -----------------------------------------------------------------

int cmd_graph(const CommonOptions& c, std::ostream& out) {
  GraphPtr g = resolve_graph(c);
  const std::string fmt = c.format.empty() ? "json" : c.format;
  if (fmt == "dot") {
    emit(to_dot(*g), c, out);
  } else if (fmt == "json") {
    emit(dump(to_json(*g)), c, out);
  } else if (fmt == "table") {
    std::ostringstream s;
    s << "# " << family_name(g->family()) << g->rank() << ": " << g->vertex_count() << " vertices, "
      << g->edges().size() << " edges\n";
    for (const auto& e : g->edges())
      s << g->vertex_names()[e.a] << " -- " << g->vertex_names()[e.b] << "  " << e.label.to_string() << "\n";
    emit(s.str(), c, out);
  } else {
    throw UsageError("unknown format '" + fmt + "' for graph (json, dot, table)");
  }
  return kOk;
}

// rank ------------------------------------------------------------------

int cmd_rank(const CommonOptions& c, std::ostream& out, std::ostream& err) {
  GraphPtr g = resolve_graph(c);
  const Family f = g->family();
  const Ring ring = resolve_ring(c, f);
  const unsigned K = c.max_degree;
  BasisOptions opts;
  opts.max_columns = resolve_max_columns(c);
  const bool classical = f != Family::Custom;
  std::optional<HilbertSeries> closed, rec;
  if (classical) closed = hilbert_closed_form(f, g->rank(), K);
  if (f == Family::A) rec = hilbert_recurrence_A(g->rank(), K);
  const bool with_index = f == Family::C && ring != Ring::Mod2;

  nlohmann::json rows = nlohmann::json::array();
  bool all_match = true;
  for (unsigned k = 0; k <= K; ++k) {
    GradedPiece piece = graded_basis(g, k, ring, opts);
    nlohmann::json row{{"k", k}, {"computed", piece.rank()}};
    bool match = true;
    if (closed) {
      row["closed_form"] = closed->d[k];
      match = match && static_cast<long long>(piece.rank()) == closed->d[k];
    }
    if (rec) {
      row["recurrence"] = rec->d[k];
      match = match && static_cast<long long>(piece.rank()) == rec->d[k];
    }
    if (with_index) {
      Lattice gen = generator_lattice(g, k, GeneratorSet{true, true, false}, ring, opts.max_columns);
      row["generator_index"] = lattice_index(gen, piece.lattice).to_string();
    }
    row["match"] = match;
    all_match = all_match && match;
    rows.push_back(std::move(row));
    err << "rank: k=" << k << " done\n";
  }

  const std::string fmt = c.format.empty() ? "table" : c.format;
  if (fmt == "json") {
    nlohmann::json j{{"family", std::string(family_name(f))},
                     {"n", g->rank()},
                     {"ring", std::string(ring_name(ring))},
                     {"K", K},
                     {"rows", rows},
                     {"all_match", all_match}};
    emit(dump(j), c, out);
  } else if (fmt == "table") {
    std::ostringstream s;
    s << "# " << family_name(f) << g->rank() << " over " << ring_name(ring) << "\n";
    s << std::setw(3) << "k" << std::setw(10) << "computed";
    if (closed) s << std::setw(8) << "closed";
    if (rec) s << std::setw(12) << "recurrence";
    if (with_index) s << std::setw(8) << "index";
    s << std::setw(7) << "match" << "\n";
    for (const auto& row : rows) {
      s << std::setw(3) << row["k"].get<unsigned>() << std::setw(10) << row["computed"].get<std::size_t>();
      if (closed) s << std::setw(8) << row["closed_form"].get<long long>();
      if (rec) s << std::setw(12) << row["recurrence"].get<long long>();
      if (with_index) s << std::setw(8) << row["generator_index"].get<std::string>();
      s << std::setw(7) << (row["match"].get<bool>() ? "yes" : "NO") << "\n";
    }
    if (with_index)
      s << "# index: [H^2k : span of tau,t monomials] over " << ring_name(ring) << "\n";
    emit(s.str(), c, out);
  } else {
    throw UsageError("unknown format '" + fmt + "' for rank (table, json)");
  }
  return all_match ? kOk : kVerificationFailed;
}

// verify ----------------------------------------------------------------

int cmd_verify(const CommonOptions& c, bool skip_bounded, std::ostream& out, std::ostream& err) {
  GraphPtr g = resolve_graph(c);
  const Family f = g->family();
  if (f == Family::Custom) throw UsageError("verify needs a classical family");
  if (c.format.size() && c.format != "json") throw UsageError("verify writes json only");
  const Ring ring = resolve_ring(c, f);
  BasisOptions opts;
  opts.max_columns = resolve_max_columns(c);
  PresentationCertificate cert = verify_presentation(g, c.max_degree, ring, opts);
  nlohmann::json j = cert.to_json();
  bool verified = cert.verified;
  std::optional<std::string> first;
  for (const auto& r : cert.relations)
    if (!r.pass && !first) first = "relation " + r.name + " does not vanish";
  for (const auto& d : cert.per_degree)
    if (!d.index.is_one() && !first) {
      first = "index " + d.index.to_string() + " at k=" + std::to_string(d.k) + " over " +
              std::string(ring_name(ring));
      j["explanation"] = "the span of generator monomials has index " + d.index.to_string() + " in H^" +
                         std::to_string(2 * d.k) + " over " + std::string(ring_name(ring)) +
                         (f == Family::C && ring == Ring::Int ? "; tau and t generate only after inverting 2"
                                                              : "");
    }
  if (!skip_bounded) {
    nlohmann::json bs = nlohmann::json::array();
    for (unsigned k = 0; k <= c.max_degree; ++k) {
      BoundedSpanReport rep = bounded_monomial_span_check(f, g->rank(), k, BoundVariant::Standard, opts.max_columns);
      bs.push_back({{"k", k},
                    {"ring", std::string(ring_name(rep.ring))},
                    {"pass", rep.pass},
                    {"restricted_monomials", rep.restricted_monomials},
                    {"restricted_rank", rep.restricted_rank},
                    {"full_rank", rep.full_rank}});
      if (!rep.pass) {
        verified = false;
        if (!first) first = "bounded monomial span check fails at k=" + std::to_string(k);
      }
      err << "verify: bounded span k=" << k << (rep.pass ? " ok" : " FAILED") << "\n";
    }
    j["bounded_span"] = std::move(bs);
  }
  j["verified"] = verified;
  if (first) {
    j["first_failure"] = *first;
    err << "verify: " << *first << "\n";
  }
  emit(dump(j), c, out);
  return verified ? kOk : kVerificationFailed;
}

// reduce ----------------------------------------------------------------

int cmd_reduce(const CommonOptions& c, const std::string& class_file, bool no_trace, std::ostream& out) {
  std::ifstream in(class_file);
  if (!in) throw UsageError("cannot read class file '" + class_file + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("class file is not valid JSON: " + std::string(e.what()));
  }
  GraphPtr g;
  try {
    g = build_graph(parse_family(j.at("family").get<std::string>()), j.at("n").get<std::size_t>());
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("class file needs family and n: " + std::string(e.what()));
  }
  CohomologyClass h = class_from_json(j, g);
  std::optional<Ring> ring;
  if (!c.ring.empty()) ring = parse_ring(c.ring);
  ReductionCertificate cert = reduce(h, ring);
  emit(dump(cert.to_json(!no_trace)), c, out);
  return cert.round_trip ? kOk : kVerificationFailed;
}

// counterexample ----------------------------------------------------------

int cmd_counterexample(const CommonOptions& c, const std::string& emit_class, bool check_double, std::ostream& out) {
  CounterexampleReport rep = c2_counterexample_report();
  bool ok = rep.member_over_int && rep.equals_half_product && rep.outside_int_span;
  if (check_double) ok = ok && rep.double_inside_int_span;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  const std::string fmt = c.format.empty() ? "table" : c.format;
  if (fmt == "json") {
    nlohmann::json j{{"class", to_json(rep.h)},
                     {"member_over_int", rep.member_over_int},
                     {"in_int_span_of_tau_t", !rep.outside_int_span},
                     {"equals_half_product", rep.equals_half_product},
                     {"index_at_k3", rep.index_at_k3.to_string()}};
    if (check_double) j["double_in_int_span"] = rep.double_inside_int_span;
    emit(dump(j), c, out);
  } else if (fmt == "table") {
    std::ostringstream s;
    const auto& g = *rep.h.graph;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      s << "h(" << g.vertex_names()[v] << ") = " << rep.h.values[v].to_string() << "\n";
    s << "member over Z: " << yn(rep.member_over_int) << "; in Z-span of {τ,t}: " << yn(!rep.outside_int_span)
      << "; equals ½(τ₁−t₂)(τ₂−t₂)(τ₁−τ₂+t₁+t₂): " << yn(rep.equals_half_product) << "\n";
    s << "index of the {τ,t}-span in H^6 over Z: " << rep.index_at_k3.to_string() << "\n";
    if (check_double) s << "2h in Z-span of {τ,t}: " << yn(rep.double_inside_int_span) << "\n";
    emit(s.str(), c, out);
  } else {
    throw UsageError("unknown format '" + fmt + "' for counterexample (table, json)");
  }
  if (!emit_class.empty()) {
    std::ofstream file(emit_class);
    if (!file) throw UsageError("cannot write '" + emit_class + "'");
    file << dump(to_json(rep.h));
  }
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivariant graph cohomology of classical GKM graphs", "gkmcoh"};
  app.require_subcommand(1);
  CommonOptions c;
  std::string class_file, emit_class;
  bool skip_bounded = false, no_trace = false, check_double = false;

  auto* graph = app.add_subcommand("graph", "labeled graph as JSON, DOT or a table");
  add_common(graph, c, true, false);
  graph->add_option("--format", c.format, "json, dot or table");

  auto* rank = app.add_subcommand("rank", "graded ranks against closed forms");
  add_common(rank, c, true, true);
  rank->add_option("--ring", c.ring, "Int, Dyadic or Mod2");
  rank->add_option("--format", c.format, "table or json");

  auto* verify = app.add_subcommand("verify", "presentation certificate up to --max-degree");
  add_common(verify, c, true, true);
  verify->add_option("--ring", c.ring, "Int, Dyadic or Mod2");
  verify->add_option("--format", c.format, "json");
  verify->add_flag("--skip-bounded", skip_bounded, "omit the bounded monomial span checks");

  auto* red = app.add_subcommand("reduce", "write a class as a polynomial in the generators");
  add_common(red, c, false, false);
  red->add_option("class_file", class_file, "class JSON")->required();
  red->add_option("--ring", c.ring, "Int or Dyadic");
  red->add_flag("--no-trace", no_trace, "omit the stage trace");

  auto* cex = app.add_subcommand("counterexample", "the degree-6 class on C2 outside the integral span");
  add_common(cex, c, false, false);
  cex->add_option("--format", c.format, "table or json");
  cex->add_option("--emit-class", emit_class, "write the class JSON to a file");
  cex->add_flag("--check-double", check_double, "also check that 2h lies in the integral span");

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
    err << "gkmcoh: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (graph->parsed()) return cmd_graph(c, out);
    if (rank->parsed()) return cmd_rank(c, out, err);
    if (verify->parsed()) return cmd_verify(c, skip_bounded, out, err);
    if (red->parsed()) return cmd_reduce(c, class_file, no_trace, out);
    if (cex->parsed()) return cmd_counterexample(c, emit_class, check_double, out);
  } catch (const UsageError& e) {
    err << "gkmcoh: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "gkmcoh: resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const ReductionFailure& e) {
    err << "gkmcoh: reduction failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const std::exception& e) {
    err << "gkmcoh: internal error: " << e.what() << "\n";
    return kVerificationFailed;
  }
  return kUsage;
}

}  // namespace gkm::cli
