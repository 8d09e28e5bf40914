#pragma once

#include <functional>

#include "ontoekg/llm/backend.hpp"

namespace ontoekg {

inline constexpr int kMaxRepairRetries = 2;

struct StructuredResult {
  llm::Json value;
  int retries = 0;
};

/// Sends the request and insists on a schema-valid reply. `accept` may
/// reject a schema-valid value by throwing an Error whose message explains
/// why (e.g. a label with no letters). Each rejected reply triggers one
/// repair retry whose user content is the original content followed by
/// the rejection reason and the rejected reply. After `max_retries`
/// repairs the call fails with SCHEMA_FAILURE. Backend errors propagate.
StructuredResult complete_structured(llm::ChatBackend& backend, const llm::ChatRequest& request,
                                     const std::function<void(const llm::Json&)>& accept,
                                     int max_retries = kMaxRepairRetries);

/// The user content of a repair retry.
std::string repair_message(const std::string& original_content, const std::string& error,
                           const std::string& rejected_reply);

}  // namespace ontoekg
