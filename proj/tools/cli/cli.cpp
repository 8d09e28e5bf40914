#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ontoekg/config.hpp"
#include "ontoekg/evaluation.hpp"
#include "ontoekg/llm/cassette.hpp"
#include "ontoekg/llm/http.hpp"
#include "ontoekg/llm/mock.hpp"
#include "ontoekg/pipeline.hpp"
#include "ontoekg/turtle.hpp"
#include "ontoekg/validate.hpp"

namespace ontoekg::cli {

namespace fs = std::filesystem;
using llm::Json;
using OrderedJson = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kDefaultLlmBaseUrl = "https://api.openai.com/v1";

struct GlobalOptions {
  std::string config_path;
  std::string llm_mode = "live";
  std::string cassette;
  std::string replay_match = "key";
  std::string mock_answers;
  std::string base_iri;
  std::optional<double> threshold;
  bool strict = false;
  bool include_annotations = false;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidIri:
    case ErrorCode::MissingPath:
    case ErrorCode::AuthError:
    case ErrorCode::NetworkForbidden:
      return kExitUsageError;
    case ErrorCode::ValidationFailure:
      return kExitStrictFailure;
    default:
      return kExitPipelineError;
  }
}

std::string read_file(const fs::path& path) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::MissingPath, "no such file: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingPath, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, path.string() + ": " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
}

template <typename J>
void write_json(const fs::path& path, const J& value) {
  write_file(path, value.dump(2) + "\n");
}

void write_jsonl(const fs::path& path, const std::vector<OrderedJson>& lines) {
  std::string text;
  for (const auto& l : lines) text += l.dump() + "\n";
  write_file(path, text);
}

// "out/data.ttl" + ".repairs.jsonl" -> "out/data.repairs.jsonl"
fs::path sibling(const fs::path& output, const std::string& suffix) {
  fs::path base = output;
  if (base.extension() == ".ttl" || base.extension() == ".json") base.replace_extension();
  return fs::path(base.string() + suffix);
}

PipelineConfig resolve_config(const GlobalOptions& g) {
  PipelineConfig cfg = g.config_path.empty() ? PipelineConfig{} : load_config(g.config_path);
  if (!g.base_iri.empty()) cfg.set("base_iri", g.base_iri);
  if (g.threshold) cfg.fuzzy_threshold = *g.threshold;
  if (g.strict) cfg.strict_validation = true;
  if (g.include_annotations) cfg.include_annotations = true;
  cfg.check();
  return cfg;
}

std::string env_or(const char* name, const char* fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

// Owns everything a backend refers to; members are destroyed in reverse,
// so the outer backend goes first.
struct ChatSetup {
  std::unique_ptr<llm::Cassette> cassette;
  std::unique_ptr<llm::ChatBackend> inner;
  std::unique_ptr<llm::ChatBackend> backend;
};

std::unique_ptr<llm::ChatBackend> live_chat(const PipelineConfig& cfg) {
  return std::make_unique<llm::HttpChatBackend>(
      llm::api_key_from_env(cfg.llm_api_key_env),
      llm::make_http_transport(env_or("ONTOEKG_LLM_BASE_URL", kDefaultLlmBaseUrl)),
      llm::RetryPolicy{}, cfg.in_flight_cap);
}

void require_cassette(const GlobalOptions& g) {
  if (g.cassette.empty()) {
    throw Error(ErrorCode::ConfigError, "--llm-mode " + g.llm_mode + " needs --cassette");
  }
}

ChatSetup make_chat(const GlobalOptions& g, const PipelineConfig& cfg) {
  ChatSetup s;
  if (g.llm_mode == "mock") {
    Json sheet = g.mock_answers.empty() ? Json::object() : read_json(g.mock_answers);
    s.backend = std::make_unique<llm::MockChatBackend>(std::move(sheet), cfg.in_flight_cap);
  } else if (g.llm_mode == "replay") {
    require_cassette(g);
    if (!fs::exists(g.cassette)) {
      throw Error(ErrorCode::MissingPath, "no such cassette: " + g.cassette);
    }
    s.cassette = std::make_unique<llm::Cassette>();
    s.cassette->load(g.cassette);
    const auto match = g.replay_match == "sequence" ? llm::ReplayMatch::Sequence
                                                    : llm::ReplayMatch::ByKey;
    s.backend = std::make_unique<llm::ReplayChatBackend>(*s.cassette, match, cfg.in_flight_cap);
  } else if (g.llm_mode == "record") {
    require_cassette(g);
    s.cassette = std::make_unique<llm::Cassette>();
    s.inner = live_chat(cfg);
    s.cassette->open_for_append(g.cassette);
    s.backend =
        std::make_unique<llm::RecordingChatBackend>(*s.inner, *s.cassette, cfg.in_flight_cap);
  } else {
    s.backend = live_chat(cfg);
  }
  return s;
}

struct EmbedSetup {
  std::unique_ptr<llm::Cassette> cassette;
  std::unique_ptr<llm::EmbeddingBackend> inner;
  std::unique_ptr<llm::EmbeddingBackend> backend;
};

std::unique_ptr<llm::EmbeddingBackend> live_embedder(const PipelineConfig& cfg) {
  return std::make_unique<llm::HttpEmbeddingBackend>(
      cfg.embedding_model, llm::api_key_from_env(cfg.embedding_api_key_env),
      llm::make_http_transport(env_or("ONTOEKG_EMBEDDING_BASE_URL", kDefaultLlmBaseUrl)),
      llm::RetryPolicy{}, cfg.embedding_batch_size);
}

EmbedSetup make_embedder(const GlobalOptions& g, const PipelineConfig& cfg) {
  EmbedSetup s;
  if (g.llm_mode == "mock") {
    s.backend = std::make_unique<llm::HashEmbedder>(1024, cfg.embedding_batch_size);
  } else if (g.llm_mode == "replay") {
    require_cassette(g);
    if (!fs::exists(g.cassette)) {
      throw Error(ErrorCode::MissingPath, "no such cassette: " + g.cassette);
    }
    s.cassette = std::make_unique<llm::Cassette>();
    s.cassette->load(g.cassette);
    s.backend = std::make_unique<llm::ReplayEmbeddingBackend>(cfg.embedding_model, *s.cassette,
                                                              cfg.embedding_batch_size);
  } else if (g.llm_mode == "record") {
    require_cassette(g);
    s.cassette = std::make_unique<llm::Cassette>();
    s.inner = live_embedder(cfg);
    s.cassette->open_for_append(g.cassette);
    s.backend = std::make_unique<llm::RecordingEmbeddingBackend>(*s.inner, *s.cassette,
                                                                 cfg.embedding_batch_size);
  } else {
    s.backend = live_embedder(cfg);
  }
  return s;
}

PromptAsset extraction_prompt(const PipelineConfig& cfg) {
  return cfg.extraction_prompt_file.empty()
             ? default_extraction_prompt()
             : prompt_from_file("extraction", cfg.extraction_prompt_file);
}

PromptAsset entailment_prompt(const PipelineConfig& cfg) {
  return cfg.entailment_prompt_file.empty()
             ? default_entailment_prompt()
             : prompt_from_file("entailment", cfg.entailment_prompt_file);
}

OrderedJson violation_json(const Violation& v) {
  OrderedJson iris = OrderedJson::array();
  for (const auto& i : v.iris) iris.push_back(i.value());
  return {{"code", std::string(to_string(v.code))}, {"iris", iris}, {"message", v.message}};
}

// No timestamps or absolute paths: equal runs give equal manifests.
OrderedJson manifest(const std::string& command, const GlobalOptions& g,
                     const PipelineConfig& cfg, const ExtractionStage& stage,
                     const BuildResult& result, const PromptAsset& ep, const PromptAsset& sp) {
  OrderedJson m;
  m["tool"] = "ontoekg";
  m["version"] = kVersion;
  m["command"] = command;
  m["llm_mode"] = g.llm_mode;
  m["cassette"] = g.cassette.empty() ? OrderedJson(nullptr)
                                     : OrderedJson(fs::path(g.cassette).filename().string());
  m["models"] = {{"extraction", cfg.extraction_model}, {"entailment", cfg.entailment_model}};
  m["prompts"] = {{"extraction", {{"version", ep.version}, {"sha256", ep.sha256()}}},
                  {"entailment", {{"version", sp.version}, {"sha256", sp.sha256()}}}};
  m["base_iri"] = cfg.base_iri.value();
  m["repair_policy"] = std::string(to_string(cfg.repair_policy));
  m["strict"] = cfg.strict_validation;
  auto& docs = m["documents"] = OrderedJson::array();
  for (const auto& d : stage.documents) {
    docs.push_back({{"id", d.document}, {"retries", d.retries}, {"segments", d.segments}});
  }
  m["entailment"] = {{"pairs_total", result.entailment.total_pairs},
                     {"pairs_judged", result.entailment.verdicts.size()},
                     {"truncated", result.entailment.truncated},
                     {"retries", result.entailment.retries}};
  m["counts"] = {{"classes", result.ontology.classes.size()},
                 {"properties", result.ontology.properties.size()},
                 {"subclass_edges", result.ontology.hierarchy.size()},
                 {"repairs", result.repairs.size()},
                 {"conflicts", result.conflicts.size()}};
  auto& violations = m["violations"] = OrderedJson::array();
  for (const auto& v : result.violations) violations.push_back(violation_json(v));
  return m;
}

int finish_build(const std::string& command, const GlobalOptions& g, const PipelineConfig& cfg,
                 const ExtractionStage& stage, llm::ChatBackend& chat, const fs::path& output,
                 std::ostream& err) {
  const PromptAsset ep = extraction_prompt(cfg);
  const PromptAsset sp = entailment_prompt(cfg);
  BuildResult result = run_after_extraction(stage, chat, cfg, sp);

  if (result.entailment.truncated) {
    err << "ontoekg: warning: " << result.entailment.total_pairs
        << " candidate pairs, only the first " << cfg.max_entailment_pairs << " were judged\n";
  }

  write_json(sibling(output, ".verdicts.json"), verdicts_to_json(result.entailment.verdicts));
  std::vector<OrderedJson> repairs;
  for (const auto& r : result.repairs) repairs.push_back(repair_log_entry(r.repair, r.document));
  write_jsonl(sibling(output, ".repairs.jsonl"), repairs);
  std::vector<OrderedJson> conflicts;
  for (const auto& c : result.conflicts) conflicts.push_back(conflict_log_entry(c));
  write_jsonl(sibling(output, ".conflicts.jsonl"), conflicts);
  write_json(sibling(output, ".manifest.json"), manifest(command, g, cfg, stage, result, ep, sp));

  for (const auto& v : result.violations) {
    err << "ontoekg: " << to_string(v.code) << ": " << v.message << "\n";
  }
  for (const auto& c : result.conflicts) {
    err << "ontoekg: conflict " << to_string(c.kind) << ":";
    for (const auto& l : c.labels) err << " " << l;
    err << "\n";
  }

  if (cfg.strict_validation && fails_strict(result)) {
    err << "ontoekg: strict validation failed; " << output.string() << " not written\n";
    return kExitStrictFailure;
  }
  write_file(output, result.turtle);
  err << "ontoekg: wrote " << output.string() << " (" << result.ontology.classes.size()
      << " classes, " << result.ontology.properties.size() << " properties, "
      << result.ontology.hierarchy.size() << " subclass edges)\n";
  return kExitOk;
}

std::vector<Document> load_documents(const std::string& input, std::ostream& err) {
  Corpus corpus = load_corpus(input);
  for (const auto& e : corpus.errors) {
    err << "ontoekg: skipped " << e.path.string() << ": " << e.message << "\n";
  }
  if (corpus.documents.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no readable documents under " + input);
  }
  return std::move(corpus.documents);
}

int cmd_build(const GlobalOptions& g, const std::string& input, const fs::path& output,
              std::ostream& err) {
  const PipelineConfig cfg = resolve_config(g);
  const auto documents = load_documents(input, err);
  ChatSetup chat = make_chat(g, cfg);
  const ExtractionStage stage = run_extraction(documents, *chat.backend, cfg, extraction_prompt(cfg));
  write_json(sibling(output, ".extraction.json"), to_json(stage));
  return finish_build("build", g, cfg, stage, *chat.backend, output, err);
}

int cmd_extract(const GlobalOptions& g, const std::string& input, const fs::path& output,
                std::ostream& err) {
  const PipelineConfig cfg = resolve_config(g);
  const auto documents = load_documents(input, err);
  ChatSetup chat = make_chat(g, cfg);
  const ExtractionStage stage = run_extraction(documents, *chat.backend, cfg, extraction_prompt(cfg));
  write_json(output, to_json(stage));
  err << "ontoekg: wrote " << output.string() << " (" << stage.documents.size()
      << " documents)\n";
  return kExitOk;
}

int cmd_entail(const GlobalOptions& g, const std::string& input, const fs::path& output,
               std::ostream& err) {
  const PipelineConfig cfg = resolve_config(g);
  const ExtractionStage stage = extraction_stage_from_json(read_json(input));
  ChatSetup chat = make_chat(g, cfg);
  return finish_build("entail", g, cfg, stage, *chat.backend, output, err);
}

ParsedOntology parse_file(const std::string& path, const PipelineConfig& cfg, std::ostream& err) {
  const std::string text = read_file(path);
  auto parsed = parse_turtle(text, cfg.strict_validation ? ParseMode::Strict : ParseMode::Lenient,
                             cfg.base_iri);
  for (const auto& w : parsed.warnings) {
    err << "ontoekg: " << path << ": " << to_string(w.code) << ": " << w.message << "\n";
  }
  return parsed;
}

int cmd_evaluate(const GlobalOptions& g, const std::string& pred_path,
                 const std::string& gold_path, const std::string& mode, std::string use_case,
                 std::string report_path, std::ostream& out, std::ostream& err) {
  const PipelineConfig cfg = resolve_config(g);
  for (const auto& p : {pred_path, gold_path}) {
    if (!fs::exists(p)) throw Error(ErrorCode::MissingPath, "no such file: " + p);
  }
  const auto pred = to_eval_triples(parse_file(pred_path, cfg, err).ontology,
                                    cfg.include_annotations);
  const auto gold = to_eval_triples(parse_file(gold_path, cfg, err).ontology,
                                    cfg.include_annotations);

  MatchReport report;
  if (mode == "fuzzy") {
    EmbedSetup embed = make_embedder(g, cfg);
    report = fuzzy_match_score(pred, gold, *embed.backend, cfg.fuzzy_threshold);
  } else {
    report = exact_match_score(pred, gold);
  }

  if (use_case.empty()) use_case = fs::path(gold_path).stem().string();
  if (report_path.empty()) report_path = sibling(pred_path, ".report.json").string();
  const auto rendered = render_report({{use_case, report}});
  out << rendered.text;
  write_json(report_path, report_to_json(use_case, report));
  err << "ontoekg: wrote " << report_path << "\n";
  return kExitOk;
}

int cmd_validate(const GlobalOptions& g, const std::string& path, bool as_json,
                 std::ostream& out, std::ostream& err) {
  const PipelineConfig cfg = resolve_config(g);
  const auto parsed = parse_file(path, cfg, err);
  const auto violations = validate_ontology(parsed.ontology);
  if (as_json) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& v : violations) arr.push_back(violation_json(v));
    out << arr.dump(2) << "\n";
  } else {
    for (const auto& v : violations) {
      out << to_string(v.code);
      for (const auto& i : v.iris) out << " " << i.value();
      out << "  # " << v.message << "\n";
    }
  }
  if (violations.empty()) err << "ontoekg: no violations\n";
  return cfg.strict_validation && has_fatal(violations) ? kExitStrictFailure : kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Builds OWL ontologies from text with an LLM and scores them against gold files.",
               "ontoekg"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--config", g.config_path, "Key-value config file");
  app.add_option("--llm-mode", g.llm_mode, "Backend mode")
      ->check(CLI::IsMember({"live", "record", "replay", "mock"}));
  app.add_option("--cassette", g.cassette, "Cassette file (record/replay)");
  app.add_option("--replay-match", g.replay_match, "Cassette lookup: key or sequence")
      ->check(CLI::IsMember({"key", "sequence"}));
  app.add_option("--mock-answers", g.mock_answers, "Answer sheet for --llm-mode mock");
  app.add_flag("--strict", g.strict, "Fail on CYCLE/DANGLING_REF and hierarchy conflicts");
  app.add_option("--base-iri", g.base_iri, "Base IRI for minted classes and properties");
  app.add_option("--threshold", g.threshold, "Fuzzy-match similarity threshold");
  app.add_flag("--include-annotations", g.include_annotations,
               "Score label/comment triples too");

  std::string input, output;
  auto* build = app.add_subcommand("build", "Run the whole pipeline on a file or directory");
  build->add_option("input", input, "Text file or corpus directory")->required();
  build->add_option("-o,--output", output, "Turtle output")->required();

  auto* extract = app.add_subcommand("extract", "Extraction stage only; writes JSON");
  extract->add_option("input", input, "Text file or corpus directory")->required();
  extract->add_option("-o,--output", output, "Extraction JSON output")->required();

  auto* entail_cmd = app.add_subcommand("entail", "Everything after extraction");
  entail_cmd->add_option("input", input, "Extraction JSON from `extract`")->required();
  entail_cmd->add_option("-o,--output", output, "Turtle output")->required();

  std::string pred, gold, mode = "exact", use_case, report;
  auto* evaluate = app.add_subcommand("evaluate", "Score a predicted ontology against a gold one");
  evaluate->add_option("pred", pred, "Predicted .ttl")->required();
  evaluate->add_option("gold", gold, "Gold .ttl")->required();
  evaluate->add_option("--mode", mode, "exact or fuzzy")->check(CLI::IsMember({"exact", "fuzzy"}));
  evaluate->add_option("--use-case", use_case, "Row name (default: gold file stem)");
  evaluate->add_option("-o,--report", report, "Report JSON (default: <pred>.report.json)");

  bool as_json = false;
  auto* validate = app.add_subcommand("validate", "List violations in a .ttl file");
  validate->add_option("input", input, "Turtle file")->required();
  validate->add_flag("--json", as_json, "Print violations as JSON");

  for (auto* sub : {build, extract, entail_cmd, evaluate, validate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (*build) return cmd_build(g, input, output, err);
    if (*extract) return cmd_extract(g, input, output, err);
    if (*entail_cmd) return cmd_entail(g, input, output, err);
    if (*evaluate) return cmd_evaluate(g, pred, gold, mode, use_case, report, out, err);
    return cmd_validate(g, input, as_json, out, err);
  } catch (const Error& e) {
    err << "ontoekg: error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "ontoekg: error: " << e.what() << "\n";
    return kExitPipelineError;
  }
}

}  // namespace ontoekg::cli
