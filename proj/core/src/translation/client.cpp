#include "rstparse/translation/client.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>

#include "rstparse/errors.hpp"

namespace rstparse::translation {

std::vector<std::string> IdentityClient::translate_batch(const std::vector<std::string>& segments,
                                                         const std::string&,
                                                         const std::string&) {
  return segments;
}

DictionaryClient::DictionaryClient(std::map<std::string, std::string> dict)
    : dict_(std::move(dict)) {}

DictionaryClient DictionaryClient::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dictionary file: " + path);
  std::map<std::string, std::string> dict;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("dictionary line needs 'source<TAB>target'");
    dict[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return DictionaryClient(std::move(dict));
}

std::vector<std::string> DictionaryClient::translate_batch(
    const std::vector<std::string>& segments, const std::string&, const std::string&) {
  std::vector<std::string> out;
  out.reserve(segments.size());
  for (const auto& seg : segments) {
    std::string result;
    size_t i = 0;
    while (i < seg.size()) {
      if (std::isspace(static_cast<unsigned char>(seg[i]))) {
        result.push_back(seg[i]);
        ++i;
        continue;
      }
      size_t start = i;
      while (i < seg.size() && !std::isspace(static_cast<unsigned char>(seg[i]))) ++i;
      std::string word = seg.substr(start, i - start);
      // Substitute ignoring one trailing punctuation character.
      std::string trail;
      if (!word.empty() && std::ispunct(static_cast<unsigned char>(word.back())) &&
          dict_.find(word) == dict_.end()) {
        trail = word.back();
        word.pop_back();
      }
      auto it = dict_.find(word);
      result += it == dict_.end() ? word : it->second;
      result += trail;
    }
    out.push_back(std::move(result));
  }
  return out;
}

RetryingClient::RetryingClient(std::shared_ptr<TranslationClient> inner, RetryPolicy policy,
                               std::function<void(std::chrono::milliseconds)> sleeper)
    : inner_(std::move(inner)), policy_(policy), sleeper_(std::move(sleeper)) {
  if (!inner_) throw ContractError("RetryingClient needs an inner client");
  if (policy_.max_attempts < 1) throw ConfigError("retry policy needs at least one attempt");
  if (!sleeper_)
    sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::vector<std::string> RetryingClient::translate_batch(const std::vector<std::string>& segments,
                                                         const std::string& source_lang,
                                                         const std::string& target_lang) {
  std::chrono::milliseconds backoff = policy_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return inner_->translate_batch(segments, source_lang, target_lang);
    } catch (const ClientError& e) {
      if (attempt >= policy_.max_attempts)
        throw ClientError("translation failed after " + std::to_string(attempt) +
                          " attempts: " + e.what());
      sleeper_(backoff);
      backoff = std::chrono::milliseconds(
          static_cast<long>(static_cast<double>(backoff.count()) * policy_.backoff_multiplier));
    }
  }
}

RateLimitedClient::RateLimitedClient(std::shared_ptr<TranslationClient> inner, RateLimit limit,
                                     std::function<double()> now_seconds,
                                     std::function<void(double)> sleep_seconds)
    : inner_(std::move(inner)),
      limit_(limit),
      now_(std::move(now_seconds)),
      sleep_(std::move(sleep_seconds)),
      tokens_(limit.capacity) {
  if (!inner_) throw ContractError("RateLimitedClient needs an inner client");
  if (limit_.capacity < 1.0 || limit_.refill_per_second <= 0.0)
    throw ConfigError("rate limit needs capacity >= 1 and a positive refill rate");
  if (!now_) {
    now_ = [] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
          .count();
    };
  }
  if (!sleep_)
    sleep_ = [](double s) { std::this_thread::sleep_for(std::chrono::duration<double>(s)); };
  last_refill_ = now_();
}

std::vector<std::string> RateLimitedClient::translate_batch(
    const std::vector<std::string>& segments, const std::string& source_lang,
    const std::string& target_lang) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    double now = now_();
    tokens_ = std::min(limit_.capacity, tokens_ + (now - last_refill_) * limit_.refill_per_second);
    last_refill_ = now;
    if (tokens_ < 1.0) {
      double wait = (1.0 - tokens_) / limit_.refill_per_second;
      sleep_(wait);
      last_refill_ = now_();
      tokens_ = 1.0;
    }
    tokens_ -= 1.0;
  }
  return inner_->translate_batch(segments, source_lang, target_lang);
}

}  // namespace rstparse::translation
