#include "spart/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spart/category.hpp"
#include "spart/errors.hpp"
#include "spart/functors.hpp"
#include "spart/presets.hpp"
#include "spart/relations.hpp"
#include "spart/tensor.hpp"
#include "spart/text_format.hpp"

namespace spart::cli {

namespace {

using nlohmann::json;

struct Options {
  std::vector<std::string> partitions;
  std::vector<std::string> files;
  std::string preset;
  std::optional<int> m;
  int bound = 6;
  std::string n;
  std::string z;
  std::string sigma;
  std::string tau;
  std::string side;
  std::string category;
  std::string save;
  int threads = 1;
  int max_rounds = 64;
  bool json_out = false;
  bool strict = false;
  bool ascii_art = false;
  bool all = false;
  bool no_rotations = false;
  bool projective = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<SpatialPartition> partitions_from_json(const json& j) {
  std::vector<SpatialPartition> out;
  auto one = [&out](const json& item) {
    if (item.is_string()) out.push_back(parse_partition(item.get<std::string>()));
    else out.push_back(partition_from_json(item));
  };
  if (j.is_array()) {
    for (const auto& item : j) one(item);
  } else if (j.contains("generators")) {
    for (const auto& item : j.at("generators")) one(item);
  } else if (j.contains("partitions")) {
    for (const auto& item : j.at("partitions")) one(item);
  } else {
    one(j);
  }
  return out;
}

std::vector<SpatialPartition> load_file(const std::string& path) {
  std::string text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(path + ": " + e.what());
    }
    return partitions_from_json(j);
  }
  return parse_partitions(text);
}

std::vector<SpatialPartition> inputs(const Options& o) {
  std::vector<SpatialPartition> out;
  if (!o.preset.empty()) {
    auto p = preset(o.preset);
    out.insert(out.end(), p.generators.begin(), p.generators.end());
  }
  for (const auto& f : o.files) {
    auto ps = load_file(f);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  for (const auto& t : o.partitions) out.push_back(parse_partition(t));
  return out;
}

SpatialPartition exactly_one(const Options& o, const char* what) {
  auto ps = inputs(o);
  if (ps.size() != 1) throw CLI::ValidationError(std::string(what) + " takes exactly one partition");
  return ps.front();
}

std::pair<SpatialPartition, SpatialPartition> exactly_two(const Options& o, const char* what) {
  auto ps = inputs(o);
  if (ps.size() != 2) throw CLI::ValidationError(std::string(what) + " takes exactly two partitions");
  return {ps[0], ps[1]};
}

Grading grading(const Options& o, int m) {
  if (o.n.empty()) throw CLI::ValidationError("--n is required");
  Grading n = Grading::parse(o.n);
  if (n.levels() == 1 && m > 1) n = Grading(std::vector<int>(static_cast<std::size_t>(m), n.at(1)));
  if (n.levels() != m)
    throw GradingError("grading (" + n.str() + ") has " + std::to_string(n.levels()) + " entries, expected " +
                       std::to_string(m));
  return n;
}

void emit_partition(std::ostream& out, const Options& o, const SpatialPartition& p) {
  if (o.json_out) {
    out << to_json(p).dump(2) << "\n";
    return;
  }
  out << to_text(p) << "\n";
  if (o.ascii_art) out << render_ascii(p);
}

json loops_json(const LoopRecord& loops) {
  json arr = json::array();
  for (const auto& c : loops.components) arr.push_back({{"levels", c.levels}, {"size", c.size}});
  return arr;
}

int level_count(const Options& o, const std::vector<SpatialPartition>& ps) {
  if (o.m) return *o.m;
  return ps.empty() ? 1 : ps.front().levels();
}

CategorySet build_closure(const Options& o, const std::vector<SpatialPartition>& gens) {
  ClosureOptions copts;
  copts.threads = o.threads;
  copts.max_rounds = o.max_rounds;
  copts.rotations = !o.no_rotations;
  return closure(gens, level_count(o, gens), o.bound, copts);
}

int cmd_closure(std::ostream& out, const Options& o) {
  CategorySet cat = build_closure(o, inputs(o));
  if (!o.save.empty()) {
    std::ofstream f(o.save);
    if (!f) throw Error("cannot write " + o.save);
    f << to_json(cat).dump(2) << "\n";
  }
  if (o.json_out) {
    out << to_json(cat).dump(2) << "\n";
  } else {
    out << "m=" << cat.levels() << " bound=" << cat.bound() << " size=" << cat.size() << " rounds=" << cat.rounds()
        << " truncated=" << (cat.truncated() ? "yes" : "no") << " rigid=" << (is_rigid(cat) ? "yes" : "no") << "\n";
    std::vector<SpatialPartition> sorted = cat.all();
    std::sort(sorted.begin(), sorted.end());
    for (const auto& p : sorted) out << to_text(p) << "\n";
  }
  return o.strict && cat.truncated() ? kExitTruncated : kExitOk;
}

int cmd_contains(std::ostream& out, Options o) {
  // The first positional is the query; everything else describes the category.
  if (o.partitions.empty()) throw CLI::ValidationError("contains needs the query partition");
  SpatialPartition query = parse_partition(o.partitions.front());
  o.partitions.erase(o.partitions.begin());
  std::optional<CategorySet> cat;
  if (!o.category.empty()) cat = category_from_json(json::parse(read_file(o.category)));
  else cat = build_closure(o, inputs(o));
  Membership m = contains(*cat, query);
  if (o.json_out) out << json{{"membership", to_string(m)}, {"truncated", cat->truncated()}}.dump(2) << "\n";
  else out << to_string(m) << "\n";
  return o.strict && cat->truncated() ? kExitTruncated : kExitOk;
}

int cmd_dual_pairs(std::ostream& out, const Options& o) {
  auto pairs = duality_pairs_all(o.m.value_or(1));
  if (o.json_out) {
    json arr = json::array();
    for (const auto& dp : pairs)
      arr.push_back({{"sigma", extract_sigma(dp.r).images()}, {"r", to_json(dp.r)}, {"s", to_json(dp.s)}});
    out << arr.dump(2) << "\n";
    return kExitOk;
  }
  out << pairs.size() << " pairs\n";
  for (const auto& dp : pairs) {
    out << "sigma=" << extract_sigma(dp.r).str() << "\n";
    out << "  r = " << to_text(dp.r) << "\n";
    out << "  s = " << to_text(dp.s) << "\n";
  }
  return kExitOk;
}

int cmd_gram(std::ostream& out, const Options& o) {
  auto ps = inputs(o);
  if (ps.empty()) throw CLI::ValidationError("gram-rank needs partitions");
  GramResult g = gram_rank(ps, grading(o, ps.front().levels()));
  if (o.json_out) {
    json rows = json::array();
    for (const auto& row : g.matrix) {
      json r = json::array();
      for (const auto& v : row) r.push_back(v.str());
      rows.push_back(r);
    }
    out << json{{"matrix", rows}, {"rank", g.rank}}.dump(2) << "\n";
  } else {
    out << gram_csv(g.matrix) << "rank " << g.rank << "\n";
  }
  return kExitOk;
}

int cmd_verify_laws(std::ostream& out, const Options& o) {
  auto ps = inputs(o);
  if (ps.empty() || ps.size() > 2) throw CLI::ValidationError("verify-laws takes one or two partitions");
  const SpatialPartition& p = ps[0];
  const SpatialPartition& q = ps.size() == 2 ? ps[1] : ps[0];
  Grading n = grading(o, p.levels());
  json report;
  bool ok = true;
  OpsLawReport r = verify_ops_laws(p, q, n);
  report["tensor"] = r.tensor_law;
  report["involution"] = r.involution_law;
  ok = ok && r.tensor_law && r.involution_law;
  if (r.composition_checked) {
    report["composition"] = r.composition_law;
    report["removed_components"] = r.removed_components;
    report["scalar"] = r.scalar.str();
    report["uniform_power"] = r.uniform_power.str();
    ok = ok && r.composition_law;
  }
  if (!o.sigma.empty() || !o.tau.empty()) {
    const int m = p.levels();
    Permutation sigma = o.sigma.empty() ? Permutation::identity(m) : Permutation::parse(o.sigma);
    Permutation tau = o.tau.empty() ? Permutation::identity(m) : Permutation::parse(o.tau);
    bool law = verify_perm_conjugation(sigma, tau, p, n);
    report["perm"] = law;
    ok = ok && law;
  }
  if (!o.z.empty()) {
    ColorWord z = ColorWord::parse(o.z);
    if (p.levels() % static_cast<int>(z.size()) != 0)
      throw LevelMismatch("level count is not a multiple of |z|");
    FlatSignature sig(p.levels() / static_cast<int>(z.size()), z);
    bool law = verify_flat_conjugation(sig, p, n);
    report["flat"] = law;
    ok = ok && law;
  }
  if (o.json_out) {
    out << report.dump(2) << "\n";
  } else {
    for (const auto& [key, value] : report.items()) {
      if (value.is_boolean()) out << key << ": " << (value.get<bool>() ? "ok" : "FAILED") << "\n";
      else out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
  return ok ? kExitOk : kExitDomain;
}

int cmd_emit(std::ostream& out, const Options& o) {
  auto gens = inputs(o);
  int m = level_count(o, gens);
  if (o.projective) {
    gens = projective_generators(gens).all();
    m = 2;
  }
  EmitOptions eopts;
  eopts.threads = o.threads;
  if (o.bound > 0) eopts.bound = o.bound;
  Presentation pres = emit_presentation(gens, m, grading(o, m), eopts);
  if (o.json_out) out << to_json(pres).dump(2) << "\n";
  else out << to_text(pres);
  return kExitOk;
}

int cmd_proj_gens(std::ostream& out, const Options& o) {
  ProjectiveGenerators pg = projective_generators(inputs(o));
  std::optional<Grading> n;
  if (!o.n.empty()) n = grading(o, 2);
  Permutation swap({2, 1});
  auto relations = [&](const SpatialPartition& p) {
    std::vector<std::string> out;
    if (n)
      for (const auto& eq : intertwiner_equations(p, *n, swap)) out.push_back(to_text(eq));
    return out;
  };
  if (o.json_out) {
    auto list = [&](const std::vector<SpatialPartition>& ps) {
      json arr = json::array();
      for (const auto& p : ps) {
        json item = to_json(p);
        if (n) item["relations"] = relations(p);
        arr.push_back(item);
      }
      return arr;
    };
    json idbw = to_json(pg.id_bw);
    if (n) idbw["relations"] = relations(pg.id_bw);
    out << json{{"id_bw", idbw}, {"flat", list(pg.flat)}, {"flat_ids", list(pg.flat_ids)}, {"notes", pg.notes}}.dump(2)
        << "\n";
    return kExitOk;
  }
  auto show = [&](const char* head, const SpatialPartition& p) {
    out << head << to_text(p) << "\n";
    if (o.ascii_art) out << render_ascii(p);
    for (const auto& r : relations(p)) out << "    " << r << "\n";
  };
  show("id_bw    ", pg.id_bw);
  for (const auto& p : pg.flat) show("flat     ", p);
  for (const auto& p : pg.flat_ids) show("flat_ids ", p);
  for (const auto& note : pg.notes) out << "# " << note << "\n";
  return kExitOk;
}

void add_inputs(CLI::App* cmd, Options& o) {
  cmd->add_option("partitions", o.partitions, "partitions in text form");
  cmd->add_option("--file", o.files, "file with partitions (text or JSON)");
  cmd->add_option("--preset", o.preset, "bundled generator set")
      ->check(CLI::IsMember(preset_names()));
}

void add_output(CLI::App* cmd, Options& o) {
  cmd->add_flag("--json", o.json_out, "JSON output");
  cmd->add_flag("--ascii-art", o.ascii_art, "draw partitions");
}

void add_closure_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--m", o.m, "level count")->check(CLI::PositiveNumber);
  cmd->add_option("--bound", o.bound, "column bound")->check(CLI::NonNegativeNumber);
  cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--max-rounds", o.max_rounds, "round limit")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-rotations", o.no_rotations, "skip derived rotations");
  cmd->add_flag("--strict", o.strict, "exit 3 when the closure is truncated");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colored spatial partitions on m levels", "spart"};
  app.require_subcommand(1);
  Options o;

  auto* canon = app.add_subcommand("canon", "print the canonical form");
  auto* compose_cmd = app.add_subcommand("compose", "compose p q (q on top)");
  auto* tensor_cmd = app.add_subcommand("tensor", "tensor product p q");
  auto* involute = app.add_subcommand("involute", "upside-down reflection");
  auto* rotate_cmd = app.add_subcommand("rotate", "move one boundary column");
  auto* perm = app.add_subcommand("perm", "relabel levels");
  auto* flat = app.add_subcommand("flat", "flatten m*|z| levels to m");
  auto* flat_pre = app.add_subcommand("flat-pre", "preimage under flattening");
  auto* realize_cmd = app.add_subcommand("realize", "linear map T_p");
  auto* closure_cmd = app.add_subcommand("closure", "bounded category closure");
  auto* contains_cmd = app.add_subcommand("contains", "membership in a bounded category");
  auto* dual_pairs = app.add_subcommand("dual-pairs", "all duality pairs");
  auto* gram = app.add_subcommand("gram-rank", "Gram matrix and rank");
  auto* verify = app.add_subcommand("verify-laws", "check the realization laws");
  auto* emit = app.add_subcommand("emit-relations", "universal presentation");
  auto* proj = app.add_subcommand("proj-gens", "projective generators");

  for (auto* cmd : {canon, compose_cmd, tensor_cmd, involute, rotate_cmd, perm, flat, flat_pre, realize_cmd,
                    closure_cmd, gram, verify, emit, proj})
    add_inputs(cmd, o);
  for (auto* cmd : {canon, compose_cmd, tensor_cmd, involute, rotate_cmd, perm, flat, flat_pre, realize_cmd,
                    closure_cmd, contains_cmd, dual_pairs, gram, verify, emit, proj})
    add_output(cmd, o);
  add_closure_options(closure_cmd, o);
  add_closure_options(contains_cmd, o);
  contains_cmd->add_option("partitions", o.partitions, "query partition, then generators");
  contains_cmd->add_option("--file", o.files, "generator file");
  contains_cmd->add_option("--preset", o.preset, "bundled generator set")->check(CLI::IsMember(preset_names()));
  contains_cmd->add_option("--category", o.category, "saved closure (JSON)");
  closure_cmd->add_option("--save", o.save, "write the closure as JSON");
  dual_pairs->add_option("--m", o.m, "level count")->check(CLI::Range(1, 4));
  rotate_cmd->add_option("--side", o.side, "upper-left, upper-right, lower-left or lower-right")->required();
  perm->add_option("--sigma", o.sigma, "white level permutation, e.g. [2,1]");
  perm->add_option("--tau", o.tau, "black level permutation");
  flat->add_option("--z", o.z, "signature word over w,b")->required();
  flat_pre->add_option("--z", o.z, "signature word over w,b")->required();
  flat_pre->add_flag("--all", o.all, "every preimage, not only the greedy one");
  for (auto* cmd : {compose_cmd, realize_cmd, gram, verify, emit, proj})
    cmd->add_option("--n", o.n, "grading, e.g. 2,3,2");
  verify->add_option("--sigma", o.sigma, "also check level permutation conjugation");
  verify->add_option("--tau", o.tau, "black level permutation");
  verify->add_option("--z", o.z, "also check flattening conjugation");
  emit->add_option("--m", o.m, "level count")->check(CLI::PositiveNumber);
  emit->add_option("--bound", o.bound, "column bound for the duality search (0 = automatic)")
      ->check(CLI::NonNegativeNumber);
  emit->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  emit->add_flag("--projective", o.projective, "use the projective generators of a one-level set");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "spart: " << e.what() << "\n";
    return kExitUsage;
  }
  if (emit->parsed() && emit->count("--bound") == 0) o.bound = 0;

  try {
    if (canon->parsed()) {
      for (const auto& p : inputs(o)) emit_partition(out, o, p);
    } else if (compose_cmd->parsed()) {
      auto [p, q] = exactly_two(o, "compose");
      Composition c = compose(p, q);
      if (o.json_out) {
        json j{{"partition", to_json(c.partition)}, {"removed", loops_json(c.loops)}};
        if (!o.n.empty()) {
          Grading n = grading(o, p.levels());
          j["scalar"] = c.loops.scalar(n).str();
          j["uniform_power"] = c.loops.uniform_power(n).str();
        }
        out << j.dump(2) << "\n";
      } else {
        emit_partition(out, o, c.partition);
        out << "removed components: " << c.loops.size() << "\n";
        if (!o.n.empty()) {
          Grading n = grading(o, p.levels());
          out << "scalar: " << c.loops.scalar(n).str() << "\n";
          out << "N^alpha: " << c.loops.uniform_power(n).str() << "\n";
        }
      }
    } else if (tensor_cmd->parsed()) {
      auto [p, q] = exactly_two(o, "tensor");
      emit_partition(out, o, tensor(p, q));
    } else if (involute->parsed()) {
      emit_partition(out, o, involution(exactly_one(o, "involute")));
    } else if (rotate_cmd->parsed()) {
      emit_partition(out, o, rotate(exactly_one(o, "rotate"), parse_side(o.side)));
    } else if (perm->parsed()) {
      SpatialPartition p = exactly_one(o, "perm");
      const int m = p.levels();
      Permutation sigma = o.sigma.empty() ? Permutation::identity(m) : Permutation::parse(o.sigma);
      Permutation tau = o.tau.empty() ? Permutation::identity(m) : Permutation::parse(o.tau);
      emit_partition(out, o, perm_apply(sigma, tau, p));
    } else if (flat->parsed()) {
      SpatialPartition p = exactly_one(o, "flat");
      ColorWord z = ColorWord::parse(o.z);
      if (z.size() == 0 || p.levels() % static_cast<int>(z.size()) != 0)
        throw LevelMismatch("level count " + std::to_string(p.levels()) + " is not a multiple of |z|");
      emit_partition(out, o, flat_apply(FlatSignature(p.levels() / static_cast<int>(z.size()), z), p));
    } else if (flat_pre->parsed()) {
      SpatialPartition q = exactly_one(o, "flat-pre");
      FlatSignature sig(q.levels(), ColorWord::parse(o.z));
      std::vector<SpatialPartition> pre;
      if (o.all) {
        pre = flat_preimages_all(sig, q);
      } else if (auto p = flat_preimage(sig, q)) {
        pre.push_back(*p);
      }
      if (pre.empty()) throw ColorMismatch("row colors do not factor into z and its conjugate");
      for (const auto& p : pre) emit_partition(out, o, p);
    } else if (realize_cmd->parsed()) {
      SpatialPartition p = exactly_one(o, "realize");
      IntegerTensor t = realize(p, grading(o, p.levels()));
      if (o.json_out) {
        out << t.to_json().dump(2) << "\n";
      } else {
        out << t.row_size() << " x " << t.col_size() << ", " << t.nonzeros() << " nonzero\n";
        for (const auto& [key, value] : t.entries())
          out << key.first << " " << key.second << " " << value.str() << "\n";
      }
    } else if (closure_cmd->parsed()) {
      return cmd_closure(out, o);
    } else if (contains_cmd->parsed()) {
      return cmd_contains(out, o);
    } else if (dual_pairs->parsed()) {
      return cmd_dual_pairs(out, o);
    } else if (gram->parsed()) {
      return cmd_gram(out, o);
    } else if (verify->parsed()) {
      return cmd_verify_laws(out, o);
    } else if (emit->parsed()) {
      return cmd_emit(out, o);
    } else if (proj->parsed()) {
      return cmd_proj_gens(out, o);
    }
  } catch (const CLI::ValidationError& e) {
    err << "spart: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "spart: " << e.what() << "\n";
    return kExitDomain;
  } catch (const json::exception& e) {
    err << "spart: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace spart::cli
