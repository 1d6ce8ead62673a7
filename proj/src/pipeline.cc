#include "causenet/pipeline.h"

#include <algorithm>
#include <functional>
#include <map>

#include <fmt/format.h>

#include "causenet/causaldb.h"
#include "causenet/cbn.h"
#include "causenet/corpus.h"
#include "causenet/embeddings.h"
#include "causenet/eval.h"
#include "causenet/hypernymy.h"
#include "causenet/lattice.h"
#include "causenet/scoring.h"
#include "causenet/util.h"

namespace causenet {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kManifestSchemaVersion = 1;

struct StageInfo {
  std::string name;
  std::string artifact;
  std::vector<std::string> sidecars;
  std::vector<std::string> upstream;
};

const std::vector<StageInfo>& Stages() {
  static const std::vector<StageInfo> stages = {
      {"ingest", "corpus.jsonl", {}, {}},
      {"variables", "variables.jsonl", {"isa_pairs.tsv"}, {"ingest"}},
      {"lattice", "lattice.json", {"lattice.dot"}, {"variables"}},
      {"gamma", "gamma.jsonl", {"gamma_index.tsv"}, {"ingest"}},
      {"score", "scores.tsv", {}, {"variables", "gamma"}},
      {"cbn", "cbn.json", {"cbn.dot"}, {"score", "lattice", "variables", "ingest"}},
      {"evaluate", "eval_report.json", {"eval_report.txt"},
       {"score", "gamma", "variables", "ingest"}},
      {"sweep", "sweep.tsv", {}, {"score"}},
  };
  return stages;
}

const StageInfo* FindStage(std::string_view name) {
  for (const auto& s : Stages()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

// A stage input is absent from the output directory.
struct MissingUpstream {
  std::string stage;
  std::string path;
};

// A field a stage needs is unset.
struct ConfigProblem {
  std::vector<std::string> errors;
};

class StageRunner {
 public:
  StageRunner(const RunConfig& config, std::ostream& log)
      : config_(config), out_(config.output_dir), log_(log) {}

  void Run(const StageInfo& stage) {
    CheckRequired(stage.name);
    for (const auto& up : stage.upstream) {
      const fs::path p = out_ / FindStage(up)->artifact;
      if (!fs::exists(p)) throw MissingUpstream{up, p.string()};
    }
    log_ << fmt::format("[{}] running\n", stage.name);
    if (stage.name == "ingest") Ingest();
    if (stage.name == "variables") Variables();
    if (stage.name == "lattice") Lattice();
    if (stage.name == "gamma") Gamma();
    if (stage.name == "score") Score();
    if (stage.name == "cbn") Cbn();
    if (stage.name == "evaluate") EvaluateStage();
    if (stage.name == "sweep") Sweep();
    UpdateManifest(stage);
    log_ << fmt::format("[{}] wrote {}\n", stage.name, (out_ / stage.artifact).string());
  }

 private:
  void CheckRequired(const std::string& stage) const {
    std::vector<std::string> errors;
    auto need = [&](const std::string& field, bool present) {
      if (!present) errors.push_back(fmt::format("{}: required by stage {}", field, stage));
    };
    need("stopwords", !config_.stopwords.empty());
    if (stage == "ingest") need("corpus", !config_.corpus.empty());
    if (stage == "variables") {
      need("patterns", !config_.patterns.empty());
      need("embeddings", !config_.embeddings.empty());
    }
    if (stage == "gamma") need("lexicon", !config_.lexicon.empty());
    if (stage == "evaluate" || stage == "sweep") {
      need("annotations", !config_.annotations.empty());
    }
    if (!errors.empty()) throw ConfigProblem{errors};
  }

  TextNormalizer Normalizer() const { return TextNormalizer(LoadStopwords(config_.stopwords)); }

  std::string Read(const std::string& name) const { return ReadFile(out_ / name); }
  void Write(const std::string& name, std::string_view contents) const {
    WriteFile(out_ / name, contents);
  }

  CorpusStore LoadCorpus() const {
    return CorpusStore::FromJsonl(Read("corpus.jsonl"), (out_ / "corpus.jsonl").string());
  }
  VariableStore LoadVariables(const TextNormalizer& normalizer) const {
    return VariableStore::FromJsonl(Read("variables.jsonl"), normalizer,
                                    (out_ / "variables.jsonl").string());
  }
  GammaDB LoadGamma() const {
    return GammaDB::FromJsonl(Read("gamma.jsonl"), (out_ / "gamma.jsonl").string());
  }
  std::vector<CRScore> LoadScores() const {
    return ScoresFromTsv(Read("scores.tsv"), (out_ / "scores.tsv").string());
  }

  void Ingest() {
    IngestConfig ic;
    ic.stopwords = LoadStopwords(config_.stopwords);
    ic.workers = config_.workers;
    std::vector<fs::path> paths(config_.corpus.begin(), config_.corpus.end());
    CorpusStore corpus = IngestCorpus(paths, ic);
    log_ << fmt::format("[ingest] {} documents, {} sentences\n", corpus.documents().size(),
                        corpus.sentence_count());
    Write("corpus.jsonl", corpus.ToJsonl());
  }

  void Variables() {
    const TextNormalizer normalizer = Normalizer();
    const CorpusStore corpus = LoadCorpus();
    const auto patterns = LoadIsAPatterns(config_.patterns);
    const auto pairs = ExtractIsAPairs(corpus, patterns, normalizer, config_.workers);
    std::string tsv = "variable\tvalue\tcount\tplausibility\n";
    for (const auto& p : pairs) {
      tsv += fmt::format("{}\t{}\t{}\t{}\n", p.variable, p.value, p.count,
                         FormatDouble(p.plausibility));
    }
    Write("isa_pairs.tsv", tsv);
    const EmbeddingStore embeddings = LoadEmbeddings(config_.embeddings);
    VariableStoreOptions options;
    options.min_count = config_.min_count;
    options.min_plausibility = config_.min_plausibility;
    options.weight_mode = ParseWeightMode(config_.weight_mode);
    const VariableStore store = BuildVariableStore(pairs, options, embeddings, normalizer);
    log_ << fmt::format("[variables] {} IsA pairs, {} variables\n", pairs.size(), store.size());
    Write("variables.jsonl", store.ToJsonl());
  }

  void Lattice() {
    const VariableStore store = LoadVariables(Normalizer());
    const FormalContext context = FormalContext::FromVariableStore(store);
    const ConceptLattice lattice = BuildLattice(context, EnumerateConcepts(context));
    log_ << fmt::format("[lattice] {} concepts\n", lattice.concepts().size());
    Write("lattice.json", lattice.ToJson());
    Write("lattice.dot", lattice.ToDot());
  }

  void Gamma() {
    const TextNormalizer normalizer = Normalizer();
    const CorpusStore corpus = LoadCorpus();
    const MarkerLexicon lexicon = CompileMarkerLexicon(config_.lexicon);
    const GammaDB gamma = BuildGamma(corpus, lexicon, normalizer, config_.workers);
    log_ << fmt::format("[gamma] {} entries\n", gamma.entries().size());
    Write("gamma.jsonl", gamma.ToJsonl());
    Write("gamma_index.tsv", gamma.IndexToTsv());
  }

  ScoringConfig Scoring() const {
    ScoringConfig sc;
    sc.mu = config_.mu;
    sc.weight_mode = ParseWeightMode(config_.weight_mode);
    sc.bidirectional_tau = config_.bidirectional_tau;
    return sc;
  }

  void Score() {
    const VariableStore store = LoadVariables(Normalizer());
    const GammaDB gamma = LoadGamma();
    const auto scores = ScoreAllPairs(store, gamma, Scoring(), config_.workers);
    log_ << fmt::format("[score] {} pairs\n", scores.size());
    Write("scores.tsv", ScoresToTsv(scores));
  }

  void Cbn() {
    const VariableStore store = LoadVariables(Normalizer());
    const CorpusStore corpus = LoadCorpus();
    const auto scores = LoadScores();
    const ConceptLattice lattice =
        ConceptLattice::FromJson(Read("lattice.json"), (out_ / "lattice.json").string());
    GraphOptions go;
    go.mu = config_.mu;
    go.inherit = config_.inherit;
    go.inheritance.propagate_effect_side = config_.propagate_effect_side;
    const CausalGraph graph = BuildCausalGraph(store.Names(), scores, &lattice, go);
    for (const auto& r : graph.removed()) {
      log_ << fmt::format("[cbn] removed {} -> {}: {}\n", r.edge.cause, r.edge.effect, r.reason);
    }
    const CountUnit unit = ParseCountUnit(config_.unit);
    const CooccurrenceCounts counts = CountCooccurrences(corpus, store, unit, config_.workers);
    CpdOptions co;
    co.max_cells = config_.max_cpd_cells;
    RunMetadata meta;
    meta.mu = config_.mu;
    meta.weight_mode = config_.weight_mode;
    meta.bidirectional_tau = config_.bidirectional_tau;
    meta.unit = ToString(unit);
    meta.splitter = MarkerAnchoredSplitter().name();
    auto hash = [](const std::string& path) {
      return path.empty() ? std::string() : Sha256File(path);
    };
    meta.lexicon_sha256 = hash(config_.lexicon);
    meta.embeddings_sha256 = hash(config_.embeddings);
    meta.stopwords_sha256 = hash(config_.stopwords);
    const CBN cbn = BuildCbn(graph, store, counts, co, meta);
    log_ << fmt::format("[cbn] {} nodes, {} edges, {} bidirectional, {} removed\n",
                        graph.nodes().size(), graph.edges().size(), graph.bidirectional().size(),
                        graph.removed().size());
    Write("cbn.json", cbn.ToJson());
    Write("cbn.dot", cbn.ToDot());
  }

  void EvaluateStage() {
    const auto gold = LoadAnnotations(config_.annotations);
    const auto scores = LoadScores();
    const EvalReport cr = Evaluate(ClassifyScores(scores, config_.mu), gold);
    const CausalLabel majority_label = MajorityLabel(gold);
    const EvalReport majority = Evaluate(ConstantPredictions(gold, majority_label), gold);

    const VariableStore store = LoadVariables(Normalizer());
    const CorpusStore corpus = LoadCorpus();
    const GammaDB gamma = LoadGamma();
    const HeuristicBaselines baselines(gamma, corpus, store, ParseCountUnit(config_.unit));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& t : gold) pairs.emplace_back(t.concept_a, t.concept_b);

    json j;
    j["mu"] = config_.mu;
    j["annotations_sha256"] = Sha256File(config_.annotations);
    j["causal_relation"] = ReportToJson(cr);
    j["majority"] = ReportToJson(majority);
    j["majority"]["label"] = static_cast<int>(majority_label);
    std::string text = ReportToText(cr, fmt::format("causal relation (mu = {})", config_.mu));
    text += ReportToText(majority, fmt::format("majority class ({})",
                                               static_cast<int>(majority_label)));
    for (Baseline b : AllBaselines()) {
      const EvalReport r = Evaluate(baselines.Predict(b, pairs), gold);
      j["baselines"][ToString(b)] = ReportToJson(r);
      text += ReportToText(r, fmt::format("baseline {}", ToString(b)));
    }
    log_ << fmt::format("[evaluate] accuracy {:.4f}, macro-F1 {:.4f} on {} tuples\n",
                        cr.accuracy, cr.macro_f1, cr.total);
    Write("eval_report.json", j.dump(1) + "\n");
    Write("eval_report.txt", text);
  }

  void Sweep() {
    const auto gold = LoadAnnotations(config_.annotations);
    const auto scores = LoadScores();
    const auto grid = config_.mu_grid.empty() ? DefaultMuGrid() : config_.mu_grid;
    Write("sweep.tsv", SweepToTsv(SweepMu(scores, gold, grid)));
  }

  void UpdateManifest(const StageInfo& stage) {
    const fs::path path = out_ / "manifest.json";
    json manifest;
    if (fs::exists(path)) {
      try {
        manifest = json::parse(ReadFile(path));
      } catch (const json::exception&) {
        Warn(fmt::format("{} is not valid JSON; starting a new manifest", path.string()));
        manifest = json();
      }
    }
    const json snapshot = config_.Snapshot();
    const std::string config_hash = Sha256Hex(snapshot.dump());
    json entry = {{"stage", stage.name},
                  {"path", stage.artifact},
                  {"sha256", Sha256File(out_ / stage.artifact)},
                  {"bytes", fs::file_size(out_ / stage.artifact)},
                  {"config_sha256", config_hash}};
    entry["sidecars"] = json::array();
    for (const auto& s : stage.sidecars) {
      entry["sidecars"].push_back({{"path", s}, {"sha256", Sha256File(out_ / s)}});
    }
    std::map<std::string, json> by_stage;
    if (manifest.contains("artifacts") && manifest["artifacts"].is_array()) {
      for (const auto& a : manifest["artifacts"]) {
        if (a.contains("stage") && FindStage(a["stage"].get<std::string>()) != nullptr) {
          by_stage[a["stage"].get<std::string>()] = a;
        }
      }
    }
    by_stage[stage.name] = entry;
    json artifacts = json::array();
    for (const auto& s : Stages()) {
      if (auto it = by_stage.find(s.name); it != by_stage.end()) artifacts.push_back(it->second);
    }
    json inputs = json::object();
    auto add_input = [&](const std::string& p) {
      if (!p.empty() && fs::exists(p)) inputs[p] = Sha256File(p);
    };
    for (const auto& p : config_.corpus) add_input(p);
    for (const auto* p : {&config_.embeddings, &config_.lexicon, &config_.patterns,
                          &config_.stopwords, &config_.annotations}) {
      add_input(*p);
    }
    json out = {{"schema_version", kManifestSchemaVersion},
                {"tool_version", CAUSENET_VERSION},
                {"config", snapshot},
                {"config_sha256", config_hash},
                {"inputs", inputs},
                {"artifacts", artifacts}};
    WriteFile(path, out.dump(1) + "\n");
  }

  const RunConfig& config_;
  fs::path out_;
  std::ostream& log_;
};

}  // namespace

std::vector<std::string> RunConfig::Validate() const {
  std::vector<std::string> errors;
  auto check_path = [&](const std::string& field, const std::string& path) {
    if (!path.empty() && !fs::exists(path)) {
      errors.push_back(fmt::format("{}: file '{}' does not exist", field, path));
    }
  };
  if (config_version != kConfigVersion) {
    errors.push_back(fmt::format("config_version: expected {}, got {}", kConfigVersion,
                                 config_version));
  }
  for (const auto& p : corpus) check_path("corpus", p);
  check_path("embeddings", embeddings);
  check_path("lexicon", lexicon);
  check_path("patterns", patterns);
  check_path("stopwords", stopwords);
  check_path("annotations", annotations);
  if (!(mu >= 0.0 && mu < 1.0)) errors.push_back(fmt::format("mu: {} not in [0, 1)", mu));
  if (!(bidirectional_tau > mu && bidirectional_tau <= 1.0)) {
    errors.push_back(
        fmt::format("bidirectional_tau: {} not in (mu, 1]", bidirectional_tau));
  }
  if (weight_mode != "cosine" && weight_mode != "one-minus-cosine") {
    errors.push_back(fmt::format("weight_mode: '{}' is not cosine or one-minus-cosine",
                                 weight_mode));
  }
  if (unit != "sentence" && unit != "document") {
    errors.push_back(fmt::format("unit: '{}' is not sentence or document", unit));
  }
  if (!(min_plausibility >= 0.0 && min_plausibility <= 1.0)) {
    errors.push_back(fmt::format("min_plausibility: {} not in [0, 1]", min_plausibility));
  }
  for (double m : mu_grid) {
    if (!(m >= 0.0 && m < 1.0)) errors.push_back(fmt::format("mu_grid: {} not in [0, 1)", m));
  }
  if (max_cpd_cells == 0) errors.push_back("max_cpd_cells: must be positive");
  if (workers < 1) errors.push_back(fmt::format("workers: {} is not positive", workers));
  if (output_dir.empty()) errors.push_back("output_dir: must not be empty");
  return errors;
}

json RunConfig::Snapshot() const {
  return {{"config_version", config_version},
          {"corpus", corpus},
          {"embeddings", embeddings},
          {"lexicon", lexicon},
          {"patterns", patterns},
          {"stopwords", stopwords},
          {"annotations", annotations},
          {"mu", mu},
          {"weight_mode", weight_mode},
          {"bidirectional_tau", bidirectional_tau},
          {"min_count", min_count},
          {"min_plausibility", min_plausibility},
          {"unit", unit},
          {"inherit", inherit},
          {"propagate_effect_side", propagate_effect_side},
          {"mu_grid", mu_grid.empty() ? DefaultMuGrid() : mu_grid},
          {"max_cpd_cells", max_cpd_cells}};
}

const std::vector<std::string>& StageNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : Stages()) out.push_back(s.name);
    return out;
  }();
  return names;
}

std::string StageArtifact(std::string_view stage) {
  const StageInfo* info = FindStage(stage);
  if (info == nullptr) throw DomainError(fmt::format("unknown stage '{}'", stage));
  return info->artifact;
}

int RunStage(std::string_view command, const RunConfig& config, std::ostream& log) {
  std::vector<const StageInfo*> plan;
  if (command == "all") {
    for (const auto& s : Stages()) {
      if ((s.name == "evaluate" || s.name == "sweep") && config.annotations.empty()) {
        log << fmt::format("[{}] skipped: no annotations configured\n", s.name);
        continue;
      }
      plan.push_back(&s);
    }
  } else if (const StageInfo* s = FindStage(command)) {
    plan.push_back(s);
  } else {
    log << fmt::format("unknown command '{}'\n", command);
    return kExitConfig;
  }

  const auto errors = config.Validate();
  if (!errors.empty()) {
    for (const auto& e : errors) log << "config error: " << e << "\n";
    return kExitConfig;
  }

  StageRunner runner(config, log);
  for (const StageInfo* stage : plan) {
    try {
      runner.Run(*stage);
    } catch (const MissingUpstream& m) {
      log << fmt::format("[{}] missing upstream artifact {}: run stage '{}' first\n",
                         stage->name, m.path, m.stage);
      return kExitMissingUpstream;
    } catch (const ConfigProblem& p) {
      for (const auto& e : p.errors) log << "config error: " << e << "\n";
      return kExitConfig;
    } catch (const std::exception& e) {
      log << fmt::format("[{}] error: {}\n", stage->name, e.what());
      return kExitFailure;
    }
  }
  return kExitOk;
}

}  // namespace causenet
