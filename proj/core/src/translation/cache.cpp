#include "rstparse/translation/cache.hpp"

#include <fstream>

#include <json.hpp>

#include "rstparse/errors.hpp"
#include "rstparse/util/rng.hpp"

namespace rstparse::translation {

using nlohmann::json;

TranslationCache::TranslationCache(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  if (!in) return;  // first run, the file appears on the first put
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      Entry e;
      e.source = j.at("source").get<std::string>();
      e.text = j.at("text").get<std::string>();
      entries_[j.at("key").get<std::string>()] = std::move(e);
    } catch (const json::exception& ex) {
      throw ParseError("bad cache record in " + path_ + ":" + std::to_string(lineno) + ": " +
                       ex.what());
    }
  }
}

std::string TranslationCache::make_key(const std::string& client_id,
                                       const std::string& source_lang,
                                       const std::string& target_lang, std::uint64_t hash) {
  return client_id + "|" + source_lang + "|" + target_lang + "|" + std::to_string(hash);
}

std::optional<std::string> TranslationCache::get(const std::string& client_id,
                                                 const std::string& source_lang,
                                                 const std::string& target_lang,
                                                 const std::string& source_text) {
  std::string key = make_key(client_id, source_lang, target_lang, fnv1a_hash(source_text));
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end() || it->second.source != source_text) return std::nullopt;
  return it->second.text;
}

void TranslationCache::put(const std::string& client_id, const std::string& source_lang,
                           const std::string& target_lang, const std::string& source_text,
                           const std::string& translated_text) {
  std::string key = make_key(client_id, source_lang, target_lang, fnv1a_hash(source_text));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = entries_.emplace(key, Entry{source_text, translated_text});
  if (!inserted) return;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw IoError("cannot append to translation cache: " + path_);
  json j;
  j["key"] = key;
  j["source"] = source_text;
  j["text"] = translated_text;
  out << j.dump() << '\n';
}

size_t TranslationCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

}  // namespace rstparse::translation
