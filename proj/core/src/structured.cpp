#include "ontoekg/structured.hpp"

namespace ontoekg {

std::string repair_message(const std::string& original_content, const std::string& error,
                           const std::string& rejected_reply) {
  return original_content +
         "\n\n---\nYour previous reply could not be used: " + error +
         "\nPrevious reply:\n" + rejected_reply +
         "\n\nReply again with only a JSON object that matches the required schema.";
}

StructuredResult complete_structured(llm::ChatBackend& backend, const llm::ChatRequest& request,
                                     const std::function<void(const llm::Json&)>& accept,
                                     int max_retries) {
  llm::ChatRequest attempt = request;
  std::string last_error;
  for (int retry = 0; retry <= max_retries; ++retry) {
    llm::ChatResponse response = backend.complete(attempt);
    if (response.parsed) {
      try {
        accept(*response.parsed);
        return {std::move(*response.parsed), retry};
      } catch (const Error& e) {
        last_error = e.what();
      }
    } else {
      last_error = response.schema_error;
    }
    attempt.user_content = repair_message(request.user_content, last_error, response.content);
  }
  throw Error(ErrorCode::SchemaFailure, "no valid response after " + std::to_string(max_retries) +
                                            " repair retries; last error: " + last_error);
}

}  // namespace ontoekg
