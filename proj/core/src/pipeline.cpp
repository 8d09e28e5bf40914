#include "ontoekg/pipeline.hpp"

#include <map>
#include <optional>

#include "ontoekg/rdf.hpp"
#include "ontoekg/turtle.hpp"
#include "parallel.hpp"

namespace ontoekg {

using llm::Json;

ExtractionStage run_extraction(const std::vector<Document>& documents,
                               llm::ChatBackend& backend, const PipelineConfig& cfg,
                               const PromptAsset& prompt) {
  auto outcomes = detail::parallel_map<std::optional<ExtractionOutcome>>(
      documents.size(), cfg.in_flight_cap, [&](std::size_t i) {
        return std::optional<ExtractionOutcome>(extract_schema(documents[i], backend, cfg, prompt));
      });
  ExtractionStage stage;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    auto& o = *outcomes[i];
    stage.documents.push_back({documents[i].id, std::move(o.result), o.retries, o.segments});
  }
  return stage;
}

Json to_json(const ExtractionStage& stage) {
  Json docs = Json::array();
  for (const auto& d : stage.documents) {
    Json entry = to_json(d.result);
    entry["id"] = d.document;
    entry["retries"] = d.retries;
    entry["segments"] = d.segments;
    docs.push_back(std::move(entry));
  }
  return Json{{"documents", docs}};
}

ExtractionStage extraction_stage_from_json(const Json& j) {
  ExtractionStage stage;
  try {
    for (const auto& entry : j.at("documents")) {
      DocumentExtraction d;
      d.document = entry.at("id").get<std::string>();
      d.retries = entry.value("retries", 0);
      d.segments = entry.value("segments", std::size_t{1});
      d.result = extraction_from_json(
          Json{{"classes", entry.at("classes")}, {"properties", entry.at("properties")}});
      stage.documents.push_back(std::move(d));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed extraction artifact: ") + e.what());
  }
  return stage;
}

Assembly assemble_ontology(const ExtractionStage& stage, const PipelineConfig& cfg) {
  Assembly out{Ontology(cfg.base_iri), {}};
  ExtractionResult combined;
  for (const auto& d : stage.documents) {
    auto resolved = resolve_references(merge_duplicates(reify_datatypes(d.result)),
                                       cfg.repair_policy);
    for (auto& r : resolved.repairs) out.repairs.push_back({d.document, std::move(r)});
    std::move(resolved.classes.begin(), resolved.classes.end(),
              std::back_inserter(combined.classes));
    std::move(resolved.properties.begin(), resolved.properties.end(),
              std::back_inserter(combined.properties));
  }
  combined = merge_duplicates(std::move(combined));

  Ontology& o = out.ontology;
  std::map<std::string, Iri> class_iri;
  for (const auto& c : combined.classes) {
    const bool datatype = is_datatype_class_label(c.label.text());
    class_iri.emplace(label_key(c.label.text()), o.add_class(c.label, c.description, datatype));
  }
  for (const auto& p : combined.properties) {
    o.add_property(p.label, p.description, class_iri.at(label_key(p.domain.text())),
                   class_iri.at(label_key(p.range.text())));
  }
  return out;
}

BuildResult run_after_extraction(const ExtractionStage& stage, llm::ChatBackend& backend,
                                 const PipelineConfig& cfg, const PromptAsset& prompt) {
  auto assembly = assemble_ontology(stage, cfg);
  BuildResult out{std::move(assembly.ontology), std::move(assembly.repairs), {}, {}, {}, {}};

  out.entailment = entail(out.ontology.classes, backend, cfg, prompt);
  auto hierarchy = build_hierarchy(out.entailment.verdicts, out.ontology.classes);
  out.ontology.hierarchy = std::move(hierarchy.edges);
  out.conflicts = std::move(hierarchy.conflicts);

  out.violations = validate_ontology(out.ontology);
  out.turtle = emit_turtle(to_triples(out.ontology), out.ontology.base_iri);
  return out;
}

bool fails_strict(const BuildResult& result) {
  return has_fatal(result.violations) || !result.conflicts.empty();
}

}  // namespace ontoekg
