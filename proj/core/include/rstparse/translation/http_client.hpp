#pragma once

#include <string>

#include "rstparse/translation/client.hpp"

namespace rstparse::translation {

// Adapter to an external translation service. Sends one request per
// document: the EDUs are joined with newlines and the backend is instructed
// to preserve line breaks; the response is split back on newlines.
//
// Request:  POST <path> {"q": "...", "source": "xx", "target": "yy",
//                        "format": "text", "preserve_newlines": true}
// Response: {"text": "..."} with the same number of lines.
//
// The credential, when required, is read from the named environment
// variable and sent as a bearer token.
class HttpTranslationClient : public TranslationClient {
 public:
  HttpTranslationClient(std::string endpoint_url,
                        std::string credential_env = "RSTPARSE_MT_API_KEY");

  std::string id() const override { return "http:" + endpoint_; }
  std::vector<std::string> translate_batch(const std::vector<std::string>& segments,
                                           const std::string& source_lang,
                                           const std::string& target_lang) override;

 private:
  std::string endpoint_;
  std::string host_;
  std::string path_;
  std::string credential_env_;
};

}  // namespace rstparse::translation
