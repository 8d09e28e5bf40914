// Cassette maintenance. `author` writes a replay cassette by running the
// pipeline against a mock backend driven by an answer sheet, so fixtures
// can be produced without provider access. `inspect` lists entries.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ontoekg/config.hpp"
#include "ontoekg/llm/cassette.hpp"
#include "ontoekg/llm/mock.hpp"
#include "ontoekg/pipeline.hpp"

namespace fs = std::filesystem;
using namespace ontoekg;

namespace {

int author(const std::string& input, const std::string& answers, const std::string& cassette_path,
           const std::string& config_path) {
  PipelineConfig cfg = config_path.empty() ? PipelineConfig{} : load_config(config_path);
  cfg.check();
  std::ifstream in(answers);
  if (!in) throw Error(ErrorCode::MissingPath, "cannot read " + answers);
  llm::Json sheet = llm::Json::parse(in);

  fs::remove(cassette_path);
  llm::Cassette cassette;
  cassette.open_for_append(cassette_path);
  llm::MockChatBackend mock(std::move(sheet), 1);
  // One request at a time keeps the cassette lines in a stable order.
  llm::RecordingChatBackend recorder(mock, cassette, 1);
  cfg.in_flight_cap = 1;

  Corpus corpus = load_corpus(input);
  const auto stage = run_extraction(corpus.documents, recorder, cfg);
  const auto result = run_after_extraction(stage, recorder, cfg);
  std::cerr << "ontoekg-cassette: " << cassette.size() << " entries written to " << cassette_path
            << " (" << result.ontology.classes.size() << " classes, "
            << result.entailment.verdicts.size() << " verdicts)\n";
  return 0;
}

int inspect(const std::string& cassette_path) {
  if (!fs::exists(cassette_path)) throw Error(ErrorCode::MissingPath, "no such file: " + cassette_path);
  llm::Cassette cassette;
  cassette.load(cassette_path);
  for (const auto& e : cassette.entries()) {
    std::cout << e.key.substr(0, 16) << "  " << e.kind;
    if (e.kind == "chat") {
      const auto& content = e.payload["request"]["user_content"].get_ref<const std::string&>();
      std::cout << "  " << content.substr(0, content.find('\n'));
    }
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Author and inspect ontoekg replay cassettes", "ontoekg-cassette"};
  app.require_subcommand(1);

  std::string input, answers, cassette, config;
  auto* author_cmd = app.add_subcommand("author", "Record a cassette from an answer sheet");
  author_cmd->add_option("input", input, "Text file or corpus directory")->required();
  author_cmd->add_option("--answers", answers, "Answer sheet JSON")->required();
  author_cmd->add_option("--cassette", cassette, "Cassette to (re)write")->required();
  author_cmd->add_option("--config", config, "Key-value config file");

  auto* inspect_cmd = app.add_subcommand("inspect", "List cassette entries");
  inspect_cmd->add_option("cassette", cassette, "Cassette file")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*author_cmd) return author(input, answers, cassette, config);
    return inspect(cassette);
  } catch (const std::exception& e) {
    std::cerr << "ontoekg-cassette: error: " << e.what() << "\n";
    return 1;
  }
}
