#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "prefforge/cli.hpp"
#include "prefforge/pabulib.hpp"
#include "prefforge/preflib.hpp"

namespace prefforge {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kToolVersion = "prefforge 0.1.0";

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("error writing '" + path + "'");
}

void append_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  if (!out) throw IoError("error writing '" + path + "'");
}

Seed default_seed() {
  if (const char* env = std::getenv("PREFFORGE_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string_view(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("PREFFORGE_SEED is not an unsigned integer: '") + env + "'");
  }
  return 0;
}

std::string extension(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  if (!ext.empty()) ext.erase(0, 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

std::string with_index(const std::string& path, int index) {
  fs::path p(path);
  const std::string stem = p.stem().string() + "_" + std::to_string(index);
  return (p.parent_path() / (stem + p.extension().string())).string();
}

PreflibDocument load_preflib(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_preflib(text);
  } catch (const ParseError& e) {
    throw IoError(path + ": " + e.what());
  }
}

AnyElection load_election(const std::string& path) {
  const std::string ext = extension(path);
  if (ext == "pb") {
    const std::string text = read_file(path);
    try {
      return parse_pabulib(text).election;
    } catch (const ParseError& e) {
      throw IoError(path + ": " + e.what());
    }
  }
  PreflibDocument doc = load_preflib(path);
  try {
    if (doc.type == PreflibType::soc) return doc.to_ordinal();
    return doc.to_approval();
  } catch (const std::invalid_argument& e) {
    throw IoError(path + ": " + e.what());
  }
}

OrdinalElection load_ordinal(const std::string& path) {
  AnyElection e = load_election(path);
  if (auto* o = std::get_if<OrdinalElection>(&e)) return std::move(*o);
  throw IoError(path + ": expected a complete strict ranking (soc) file");
}

std::string label_of(const std::string& path) { return fs::path(path).stem().string(); }

// ---- sample ---------------------------------------------------------------

struct SampleOptions {
  CultureArgs culture;
  std::optional<int> m;
  std::optional<int> n;
  std::optional<Seed> seed;
  std::optional<std::string> out;
  std::string format;
  int count = 1;
  std::optional<std::string> regime;
  std::string shape = "cube";
  std::string tree = "balanced";
  std::string metric = "hamming";
};

struct SampleJob {
  Seed seed = 0;
  int m = 0;
  int n = 0;
  std::string path;
  std::string content;
  std::optional<std::string> witness;
  json manifest;
};

void add_sample(CLI::App& app, SampleOptions& o) {
  auto* sub = app.add_subcommand("sample", "Sample an election from a statistical culture");
  std::string names;
  for (const auto& c : culture_names()) names += (names.empty() ? "" : ", ") + c;
  sub->add_option("--culture", o.culture.name, "One of: " + names)->required();
  sub->add_option("--m", o.m, "Number of candidates");
  sub->add_option("--n", o.n, "Number of voters");
  sub->add_option("--seed", o.seed, "Seed (default: $PREFFORGE_SEED or 0)");
  sub->add_option("--out", o.out, "Output file (stdout when absent)");
  sub->add_option("--format", o.format, "soc for ordinal; pb (default) or toi for approval");
  sub->add_option("--count", o.count, "Number of elections; file i uses seed + i")->check(CLI::PositiveNumber);
  sub->add_option("--regime", o.regime, "Draw m, n from a size regime");
  sub->add_option("--phi", o.culture.phi, "Mallows / resampling / noise dispersion");
  sub->add_option("--norm-phi", o.culture.norm_phi, "Normalized Mallows dispersion");
  sub->add_option("--alpha", o.culture.alpha, "Urn contagion (also party_list urn)");
  sub->add_flag("--alpha-gamma", o.culture.alpha_gamma, "Urn contagion drawn from Gamma(0.8, 1)");
  sub->add_option("--p", o.culture.p, "Approval probability / central ballot fraction");
  sub->add_option("--radius", o.culture.radius, "Euclidean approval radius");
  sub->add_option("--top-x", o.culture.top_x, "Approve the x closest / top-ranked candidates");
  sub->add_option("--dim", o.culture.dim, "Euclidean dimension")->check(CLI::PositiveNumber);
  sub->add_option("--shape", o.shape, "cube, sphere or gaussian")
      ->check(CLI::IsMember({"cube", "sphere", "gaussian"}));
  sub->add_option("--tree", o.tree, "balanced or caterpillar")->check(CLI::IsMember({"balanced", "caterpillar"}));
  sub->add_option("--parties", o.culture.parties, "Party-list urn with this many parties");
  sub->add_option("--metric", o.metric, "hamming or jaccard")->check(CLI::IsMember({"hamming", "jaccard"}));
}

int run_sample(SampleOptions o, const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  o.culture.shape = o.shape == "cube" ? Shape::cube : o.shape == "sphere" ? Shape::sphere : Shape::gaussian;
  o.culture.tree = o.tree == "balanced" ? TreeKind::balanced : TreeKind::caterpillar;
  o.culture.metric = o.metric == "hamming" ? BallotMetric::hamming : BallotMetric::jaccard;
  const auto& names = culture_names();
  if (std::find(names.begin(), names.end(), o.culture.name) == names.end()) {
    throw UsageError("unknown culture '" + o.culture.name + "'");
  }
  const bool approval = is_approval_culture(o.culture.name);
  if (o.format.empty()) o.format = approval ? "pb" : "soc";
  if (approval && o.format != "pb" && o.format != "toi") throw UsageError("approval cultures write pb or toi");
  if (!approval && o.format != "soc") throw UsageError("ordinal cultures write soc");
  const SizeRegime* regime = nullptr;
  if (o.regime) {
    if (o.m || o.n) throw UsageError("--regime replaces --m and --n");
    regime = &size_regime(*o.regime);
  } else if (!o.m || !o.n) {
    throw UsageError("sample needs --m and --n (or --regime)");
  }
  if (o.count > 1 && !o.out) throw UsageError("--count needs --out");
  const Seed seed = o.seed ? *o.seed : default_seed();

  std::vector<SampleJob> jobs(static_cast<std::size_t>(o.count));
  for (int i = 0; i < o.count; ++i) {
    auto& job = jobs[static_cast<std::size_t>(i)];
    job.seed = seed + static_cast<Seed>(i);
    if (regime) {
      std::tie(job.m, job.n) = sample_size(*regime, job.seed);
    } else {
      job.m = *o.m;
      job.n = *o.n;
    }
    if (o.out) job.path = o.count > 1 ? with_index(*o.out, i) : *o.out;
  }

  std::vector<std::exception_ptr> failures(jobs.size());
  auto work = [&](std::size_t i) {
    auto& job = jobs[i];
    try {
      SampledCulture s = sample_culture(o.culture, job.m, job.n, job.seed);
      if (auto* e = std::get_if<OrdinalElection>(&s.election)) {
        job.content = serialize_preflib(*e);
      } else {
        const auto& a = std::get<ApprovalElection>(s.election);
        job.content = o.format == "pb" ? serialize_pabulib(a) : serialize_preflib(a);
      }
      if (s.witness) job.witness = witness_to_json(*s.witness);
      job.manifest = {{"command", "sample"}, {"culture", o.culture.name}, {"m", job.m},       {"n", job.n},
                      {"seed", job.seed},    {"format", o.format},        {"params", s.params}, {"tool", kToolVersion}};
      if (regime) job.manifest["regime"] = regime->name;
      if (!job.path.empty()) job.manifest["file"] = job.path;
      if (job.witness) job.manifest["witness"] = job.path.empty() ? "-" : job.path + ".witness.json";
      job.manifest["argv"] = argv;
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), jobs.size()));
  {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    auto loop = [&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) work(i);
    };
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(loop);
    loop();
    for (auto& t : pool) t.join();
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  for (auto& job : jobs) {
    const std::string line = job.manifest.dump();
    if (job.path.empty()) {
      out << job.content;
      err << line << "\n";
      continue;
    }
    write_file(job.path, job.content);
    if (job.witness) write_file(job.path + ".witness.json", *job.witness);
    append_file(*o.out + ".manifest.json", line + "\n");
    out << line << "\n";
  }
  return 0;
}

// ---- map / microscope / atlas --------------------------------------------

struct MapOptions {
  std::vector<std::string> files;
  std::string distance = "heuristic";
  int restarts = 20;
  std::optional<Seed> seed;
  int threads = 0;
  bool no_refs = false;
  int dims = 2;
  std::optional<std::string> out;
  std::optional<std::string> json_out;
  int max_iter = 1000;
  double rel_tol = 1e-6;
  bool allow_large = false;
  // atlas only
  int m = kMapCandidates;
  int n = kMapVoters;
  std::string out_dir;
};

void add_layout_options(CLI::App* sub, MapOptions& o) {
  sub->add_option("--seed", o.seed, "Seed (default: $PREFFORGE_SEED or 0)");
  sub->add_option("--dims", o.dims, "Embedding dimension")->check(CLI::PositiveNumber);
  sub->add_option("--max-iter", o.max_iter, "MDS iteration cap")->check(CLI::NonNegativeNumber);
  sub->add_option("--rel-tol", o.rel_tol, "MDS relative stress tolerance")->check(CLI::NonNegativeNumber);
}

void add_distance_options(CLI::App* sub, MapOptions& o) {
  sub->add_option("--distance", o.distance, "exact or heuristic")->check(CLI::IsMember({"exact", "heuristic"}));
  sub->add_option("--restarts", o.restarts, "Heuristic restarts")->check(CLI::PositiveNumber);
  sub->add_option("--threads", o.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  sub->add_flag("--allow-large", o.allow_large, "Permit the exact distance for m > 8");
}

MapConfig map_config(const MapOptions& o) {
  MapConfig c;
  c.distance = o.distance == "exact" ? DistanceMethod::exact : DistanceMethod::heuristic;
  c.restarts = o.restarts;
  c.seed = o.seed ? *o.seed : default_seed();
  c.mds.seed = c.seed;
  c.mds.max_iter = o.max_iter;
  c.mds.rel_tol = o.rel_tol;
  c.dims = o.dims;
  c.threads = o.threads;
  c.include_references = !o.no_refs;
  c.allow_large_exact = o.allow_large;
  return c;
}

void emit_embedding(const Embedding& e, const std::string& json_text, const MapOptions& o, std::ostream& out) {
  std::ostringstream csv;
  write_csv(csv, e);
  if (o.out) {
    write_file(*o.out, csv.str());
  } else {
    out << csv.str();
  }
  if (o.json_out) write_file(*o.json_out, json_text + "\n");
}

int run_map(const MapOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<LabeledElection> elections;
  for (const auto& f : o.files) elections.push_back({label_of(f), load_ordinal(f)});
  for (const auto& le : elections) {
    if (le.election.num_candidates() != elections[0].election.num_candidates() ||
        le.election.num_voters() != elections[0].election.num_voters()) {
      throw UsageError("map: '" + le.label + "' is " + std::to_string(le.election.num_candidates()) + "x" +
                       std::to_string(le.election.num_voters()) + " but '" + elections[0].label + "' is " +
                       std::to_string(elections[0].election.num_candidates()) + "x" +
                       std::to_string(elections[0].election.num_voters()));
    }
  }
  const ElectionMap map = map_layout(std::move(elections), map_config(o));
  if (map.distances_are_upper_bounds) err << "note: heuristic distances are upper bounds on the exact distance\n";
  emit_embedding(map.embedding, to_json(map), o, out);
  return 0;
}

int run_microscope(const MapOptions& o, std::ostream& out) {
  const OrdinalElection e = load_ordinal(o.files.at(0));
  const MapConfig c = map_config(o);
  const Embedding emb = microscope_layout(e, c.dims, c.mds);
  emit_embedding(emb, to_json(emb), o, out);
  return 0;
}

int run_atlas(const MapOptions& o, std::ostream& out, std::ostream& err) {
  if (o.m < 1 || o.n < 1) throw UsageError("atlas needs m, n >= 1");
  const MapConfig c = map_config(o);
  fs::create_directories(o.out_dir);
  auto elections = map_culture_set(o.m, o.n, c.seed);
  for (const auto& le : elections) {
    write_file((fs::path(o.out_dir) / (le.label + ".soc")).string(), serialize_preflib(le.election));
  }
  const ElectionMap map = map_layout(std::move(elections), c);
  if (map.distances_are_upper_bounds) err << "note: heuristic distances are upper bounds on the exact distance\n";
  std::ostringstream csv;
  write_csv(csv, map.embedding);
  write_file((fs::path(o.out_dir) / "map.csv").string(), csv.str());
  write_file((fs::path(o.out_dir) / "map.json").string(), to_json(map) + "\n");
  json manifest = {{"command", "atlas"},   {"m", o.m},           {"n", o.n},
                   {"seed", c.seed},       {"distance", o.distance}, {"restarts", o.restarts},
                   {"tool", kToolVersion}, {"stress", map.embedding.stress}};
  append_file((fs::path(o.out_dir) / "atlas.manifest.json").string(), manifest.dump() + "\n");
  out << manifest.dump() << "\n";
  return 0;
}

// ---- validate -------------------------------------------------------------

struct ValidateOptions {
  std::vector<std::string> files;
  std::string property;
  std::vector<std::string> witnesses;
};

int run_validate(const ValidateOptions& o, std::ostream& out) {
  if (!o.witnesses.empty() && o.witnesses.size() != 1 && o.witnesses.size() != o.files.size()) {
    throw UsageError("give one --witness, one per file, or none (uses <file>.witness.json)");
  }
  bool all = true;
  for (std::size_t i = 0; i < o.files.size(); ++i) {
    const std::string& file = o.files[i];
    const std::string wpath =
        o.witnesses.empty() ? file + ".witness.json" : o.witnesses[o.witnesses.size() == 1 ? 0 : i];
    const StructureWitness w = witness_from_json(read_file(wpath));
    if (property_name(w) != o.property) {
      throw UsageError(wpath + " certifies '" + property_name(w) + "', not '" + o.property + "'");
    }
    const AnyElection e = load_election(file);
    const bool ok = std::visit([&](const auto& el) { return validate_structure(el, w); }, e);
    out << file << ": " << (ok ? "true" : "false") << "\n";
    all = all && ok;
  }
  return all ? 0 : 1;
}

// ---- convert --------------------------------------------------------------

struct ConvertOptions {
  std::string in;
  std::string out;
  std::string to;
};

bool widens(PreflibType from, PreflibType to) {
  if (from == to || from == PreflibType::soc || to == PreflibType::toi) return true;
  return false;
}

int run_convert(const ConvertOptions& o) {
  const std::string from_ext = extension(o.in);
  const std::string to_ext = o.to.empty() ? extension(o.out) : o.to;
  const bool to_pb = to_ext == "pb";
  const auto to_type = preflib_type_from_string(to_ext);
  if (!to_pb && !to_type) throw UsageError("unknown output format '" + to_ext + "' (soc, soi, toc, toi, pb)");

  if (from_ext == "pb") {
    const std::string text = read_file(o.in);
    PabulibFile f;
    try {
      f = parse_pabulib(text);
    } catch (const ParseError& e) {
      throw IoError(o.in + ": " + e.what());
    }
    if (to_pb) {
      write_file(o.out, serialize_pabulib(f.election, f.metadata));
    } else if (*to_type == PreflibType::toi) {
      write_file(o.out, serialize_preflib(f.election));
    } else {
      throw UsageError("approval data converts to pb or toi only");
    }
    return 0;
  }

  PreflibDocument doc = load_preflib(o.in);
  if (to_pb) {
    ApprovalElection a;
    try {
      a = doc.to_approval();
    } catch (const std::invalid_argument& e) {
      throw UsageError(o.in + " is not approval data: " + e.what());
    }
    write_file(o.out, serialize_pabulib(a));
    return 0;
  }
  if (!widens(doc.type, *to_type)) {
    throw UsageError("cannot convert " + std::string(to_string(doc.type)) + " to " + to_ext);
  }
  doc.type = *to_type;
  write_file(o.out, serialize_preflib(doc));
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic preference data and maps of elections", "prefforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  SampleOptions sample;
  add_sample(app, sample);

  MapOptions map;
  auto* map_cmd = app.add_subcommand("map", "Map of elections from soc files");
  map_cmd->add_option("files", map.files, "Election files")->required();
  add_distance_options(map_cmd, map);
  add_layout_options(map_cmd, map);
  map_cmd->add_flag("--no-refs", map.no_refs, "Do not add the ID/AN/UN reference elections");
  map_cmd->add_option("--out", map.out, "CSV output (stdout when absent)");
  map_cmd->add_option("--json", map.json_out, "JSON output");

  MapOptions micro;
  auto* micro_cmd = app.add_subcommand("microscope", "Layout of the votes of one election");
  micro_cmd->add_option("file", micro.files, "Election file")->required()->expected(1);
  add_layout_options(micro_cmd, micro);
  micro_cmd->add_option("--out", micro.out, "CSV output (stdout when absent)");
  micro_cmd->add_option("--json", micro.json_out, "JSON output");

  MapOptions atlas;
  auto* atlas_cmd = app.add_subcommand("atlas", "Sample the standard culture set and build its map");
  atlas_cmd->add_option("--m", atlas.m, "Candidates");
  atlas_cmd->add_option("--n", atlas.n, "Voters");
  atlas_cmd->add_option("--out-dir", atlas.out_dir, "Output directory")->required();
  add_distance_options(atlas_cmd, atlas);
  add_layout_options(atlas_cmd, atlas);

  ValidateOptions validate;
  auto* validate_cmd = app.add_subcommand("validate", "Check files against a structure witness");
  validate_cmd->add_option("files", validate.files, "Election files")->required();
  validate_cmd->add_option("--property", validate.property, "sp, spoc, sc, gs, ci or vi")
      ->required()
      ->check(CLI::IsMember({"sp", "spoc", "sc", "gs", "ci", "vi"}));
  validate_cmd->add_option("--witness", validate.witnesses, "Witness JSON file(s)");

  ConvertOptions convert;
  auto* convert_cmd = app.add_subcommand("convert", "Convert between PrefLib and Pabulib files");
  convert_cmd->add_option("input", convert.in, "Input file")->required();
  convert_cmd->add_option("output", convert.out, "Output file")->required();
  convert_cmd->add_option("--to", convert.to, "Output format (default: from the extension)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  try {
    if (app.got_subcommand("sample")) return run_sample(sample, args, out, err);
    if (app.got_subcommand("map")) return run_map(map, out, err);
    if (app.got_subcommand("microscope")) return run_microscope(micro, out);
    if (app.got_subcommand("atlas")) return run_atlas(atlas, out, err);
    if (app.got_subcommand("validate")) return run_validate(validate, out);
    if (app.got_subcommand("convert")) return run_convert(convert);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    if (app.got_subcommand("sample")) err << app.get_subcommand("sample")->help();
    return 2;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace prefforge
