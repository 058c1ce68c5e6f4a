#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace rstparse::translation {

// Persistent translation cache keyed by (client id, source lang, target
// lang, source text hash). Backed by an append-only file of JSON records;
// safe for concurrent lookups and inserts.
class TranslationCache {
 public:
  // In-memory only when path is empty.
  explicit TranslationCache(std::string path = "");

  std::optional<std::string> get(const std::string& client_id, const std::string& source_lang,
                                 const std::string& target_lang, const std::string& source_text);

  void put(const std::string& client_id, const std::string& source_lang,
           const std::string& target_lang, const std::string& source_text,
           const std::string& translated_text);

  size_t size() const;

 private:
  struct Entry {
    std::string source;  // kept to guard against hash collisions
    std::string text;
  };

  static std::string make_key(const std::string& client_id, const std::string& source_lang,
                              const std::string& target_lang, std::uint64_t hash);

  std::string path_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, Entry> entries_;
};

}  // namespace rstparse::translation
