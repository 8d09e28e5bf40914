#include "ontoekg/extraction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "ontoekg/llm/schema.hpp"
#include "ontoekg/structured.hpp"

namespace ontoekg {

using llm::Json;

const Json& extraction_response_schema() {
  static const Json schema = Json::parse(R"({
    "type": "object",
    "additionalProperties": false,
    "required": ["classes", "properties"],
    "properties": {
      "classes": {
        "type": "array",
        "items": {
          "type": "object",
          "additionalProperties": false,
          "required": ["label", "description"],
          "properties": {
            "label": {"type": "string"},
            "description": {"type": "string"}
          }
        }
      },
      "properties": {
        "type": "array",
        "items": {
          "type": "object",
          "additionalProperties": false,
          "required": ["label", "description", "domain", "range"],
          "properties": {
            "label": {"type": "string"},
            "description": {"type": "string"},
            "domain": {"type": "string"},
            "range": {"type": "string"}
          }
        }
      }
    }
  })");
  return schema;
}

Json to_json(const ExtractionResult& r) {
  Json classes = Json::array();
  for (const auto& c : r.classes) {
    classes.push_back({{"label", c.label.text()}, {"description", c.description}});
  }
  Json properties = Json::array();
  for (const auto& p : r.properties) {
    properties.push_back({{"label", p.label.text()},
                          {"description", p.description},
                          {"domain", p.domain.text()},
                          {"range", p.range.text()}});
  }
  return Json{{"classes", classes}, {"properties", properties}};
}

namespace {

Label label_at(const Json& item, const char* field, const std::string& where) {
  try {
    return Label(item.at(field).get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaFailure, where + "." + field + ": " + e.what());
  }
}

}  // namespace

ExtractionResult extraction_from_json(const Json& j) {
  if (auto err = llm::schema_violation(extraction_response_schema(), j)) {
    throw Error(ErrorCode::SchemaFailure, *err);
  }
  ExtractionResult r;
  for (std::size_t i = 0; i < j["classes"].size(); ++i) {
    const Json& c = j["classes"][i];
    const std::string where = "classes[" + std::to_string(i) + "]";
    r.classes.push_back({label_at(c, "label", where), c["description"].get<std::string>()});
  }
  for (std::size_t i = 0; i < j["properties"].size(); ++i) {
    const Json& p = j["properties"][i];
    const std::string where = "properties[" + std::to_string(i) + "]";
    r.properties.push_back({label_at(p, "label", where), p["description"].get<std::string>(),
                            label_at(p, "domain", where), label_at(p, "range", where)});
  }
  return r;
}

ExtractionOutcome extract_schema(const Document& doc, llm::ChatBackend& backend,
                                 const PipelineConfig& cfg, const PromptAsset& prompt) {
  const auto segments = window(doc, cfg.max_chars_per_request);
  ExtractionOutcome outcome;
  outcome.segments = segments.size();

  for (std::size_t i = 0; i < segments.size(); ++i) {
    llm::ChatRequest request;
    request.model = cfg.extraction_model;
    request.system_prompt = prompt.text;
    request.user_content = segments.size() == 1
                               ? "Text:\n" + segments[i]
                               : "Text (part " + std::to_string(i + 1) + " of " +
                                     std::to_string(segments.size()) + "):\n" + segments[i];
    request.response_schema = extraction_response_schema();
    request.context = {{"stage", "extraction"},
                       {"document", doc.id},
                       {"segment", i},
                       {"text", segments[i]}};

    StructuredResult reply;
    try {
      reply = complete_structured(backend, request,
                                  [](const Json& value) { (void)extraction_from_json(value); });
    } catch (const Error& e) {
      throw Error(e.code(), "extraction of document '" + doc.id + "' failed: " + e.what());
    }
    outcome.retries += reply.retries;
    auto part = extraction_from_json(reply.value);
    std::move(part.classes.begin(), part.classes.end(), std::back_inserter(outcome.result.classes));
    std::move(part.properties.begin(), part.properties.end(),
              std::back_inserter(outcome.result.properties));
  }
  return outcome;
}

namespace {

struct DatatypeEntry {
  std::string_view key;
  std::string_view canonical;
};

constexpr DatatypeEntry kDatatypeLexicon[] = {
    {"string", "Text"},     {"text", "Text"},         {"integer", "Integer"},
    {"int", "Integer"},     {"number", "Integer"},    {"decimal", "Float"},
    {"float", "Float"},     {"boolean", "Boolean"},   {"date", "Date"},
    {"datetime", "DateTime"}, {"url", "URL"},         {"uri", "URL"},
};

}  // namespace

std::optional<std::string> canonical_datatype(std::string_view label) {
  const std::string key = label_key(label);
  for (const auto& entry : kDatatypeLexicon) {
    if (entry.key == key) return std::string(entry.canonical);
  }
  return std::nullopt;
}

bool is_datatype_class_label(std::string_view label) {
  const std::string key = label_key(label);
  return std::any_of(std::begin(kDatatypeLexicon), std::end(kDatatypeLexicon),
                     [&](const DatatypeEntry& e) { return label_key(e.canonical) == key; });
}

ExtractionResult reify_datatypes(ExtractionResult r) {
  std::set<std::string> present;
  for (const auto& c : r.classes) present.insert(label_key(c.label.text()));

  for (auto& p : r.properties) {
    auto canonical = canonical_datatype(p.range.text());
    if (!canonical) continue;
    p.range = Label(*canonical);
    if (present.insert(label_key(*canonical)).second) {
      r.classes.push_back({Label(*canonical), ""});
    }
  }
  return r;
}

ExtractionResult merge_duplicates(ExtractionResult r) {
  ExtractionResult out;
  std::map<std::string, std::size_t> class_index;
  for (auto& c : r.classes) {
    auto [it, inserted] = class_index.emplace(label_key(c.label.text()), out.classes.size());
    if (inserted) {
      out.classes.push_back(std::move(c));
    } else if (out.classes[it->second].description.empty()) {
      out.classes[it->second].description = std::move(c.description);
    }
  }

  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> property_index;
  for (auto& p : r.properties) {
    auto key = std::make_tuple(label_key(p.label.text()), label_key(p.domain.text()),
                               label_key(p.range.text()));
    auto [it, inserted] = property_index.emplace(std::move(key), out.properties.size());
    if (inserted) {
      out.properties.push_back(std::move(p));
    } else if (out.properties[it->second].description.empty()) {
      out.properties[it->second].description = std::move(p.description);
    }
  }
  return out;
}

std::string_view to_string(RepairKind kind) noexcept {
  return kind == RepairKind::AutoAdd ? "AUTO_ADD" : "DROP";
}

Resolution resolve_references(const ExtractionResult& r, RepairPolicy policy) {
  Resolution out;
  out.classes = r.classes;
  std::set<std::string> known;
  for (const auto& c : r.classes) known.insert(label_key(c.label.text()));
  std::set<std::string> added;

  for (const auto& p : r.properties) {
    std::vector<const Label*> missing;
    for (const Label* ref : {&p.domain, &p.range}) {
      const std::string key = label_key(ref->text());
      if (known.contains(key)) continue;
      if (std::none_of(missing.begin(), missing.end(),
                       [&](const Label* m) { return label_key(m->text()) == key; })) {
        missing.push_back(ref);
      }
    }
    if (missing.empty()) {
      out.properties.push_back(p);
      continue;
    }
    for (const Label* m : missing) {
      if (policy == RepairPolicy::AutoAdd) {
        out.repairs.push_back({RepairKind::AutoAdd, p.label.text(), m->text(),
                               "class '" + m->text() + "' referenced by property '" +
                                   p.label.text() + "' was not extracted; added"});
        if (added.insert(label_key(m->text())).second) out.classes.push_back({*m, ""});
      } else {
        out.repairs.push_back({RepairKind::Drop, p.label.text(), m->text(),
                               "property '" + p.label.text() + "' refers to unknown class '" +
                                   m->text() + "'; dropped"});
      }
    }
    if (policy == RepairPolicy::AutoAdd) out.properties.push_back(p);
  }
  return out;
}

nlohmann::ordered_json repair_log_entry(const Repair& repair, const std::string& document_id) {
  return nlohmann::ordered_json{{"document", document_id},
              {"kind", std::string(to_string(repair.kind))},
              {"property", repair.property},
              {"missing", repair.missing}};
}

}  // namespace ontoekg
