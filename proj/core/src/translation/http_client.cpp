#include "rstparse/translation/http_client.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "rstparse/errors.hpp"
#include "rstparse/util/strings.hpp"

namespace rstparse::translation {

using nlohmann::json;

HttpTranslationClient::HttpTranslationClient(std::string endpoint_url, std::string credential_env)
    : endpoint_(std::move(endpoint_url)), credential_env_(std::move(credential_env)) {
  size_t scheme = endpoint_.find("//");
  size_t slash = endpoint_.find('/', scheme == std::string::npos ? 0 : scheme + 2);
  host_ = slash == std::string::npos ? endpoint_ : endpoint_.substr(0, slash);
  path_ = slash == std::string::npos ? "/translate" : endpoint_.substr(slash);
  if (host_.empty()) throw ConfigError("empty translation endpoint URL");
}

std::vector<std::string> HttpTranslationClient::translate_batch(
    const std::vector<std::string>& segments, const std::string& source_lang,
    const std::string& target_lang) {
  json req;
  req["q"] = util::join(segments, "\n");
  req["source"] = source_lang;
  req["target"] = target_lang;
  req["format"] = "text";
  req["preserve_newlines"] = true;

  httplib::Client client(host_);
  client.set_read_timeout(120, 0);
  httplib::Headers headers;
  if (const char* key = std::getenv(credential_env_.c_str()); key && *key)
    headers.emplace("Authorization", std::string("Bearer ") + key);

  auto res = client.Post(path_, headers, req.dump(), "application/json");
  if (!res)
    throw ClientError("translation request to " + host_ + " failed: " +
                      httplib::to_string(res.error()));
  if (res->status != 200)
    throw ClientError("translation service returned status " + std::to_string(res->status));

  std::string text;
  try {
    text = json::parse(res->body).at("text").get<std::string>();
  } catch (const json::exception& e) {
    throw ClientError(std::string("malformed translation response: ") + e.what());
  }
  return util::split_lines(text);
}

}  // namespace rstparse::translation
