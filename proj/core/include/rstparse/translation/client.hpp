#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace rstparse::translation {

// Translates a batch of segments; the output must have the same length and
// order as the input. One batch per document, newline semantics preserved.
class TranslationClient {
 public:
  virtual ~TranslationClient() = default;

  virtual std::string id() const = 0;
  virtual std::vector<std::string> translate_batch(const std::vector<std::string>& segments,
                                                   const std::string& source_lang,
                                                   const std::string& target_lang) = 0;
};

// Returns the input unchanged; used by tests and for monolingual dry runs.
class IdentityClient : public TranslationClient {
 public:
  std::string id() const override { return "identity"; }
  std::vector<std::string> translate_batch(const std::vector<std::string>& segments,
                                           const std::string& source_lang,
                                           const std::string& target_lang) override;
};

// Word-by-word dictionary substitution; unmapped words pass through.
class DictionaryClient : public TranslationClient {
 public:
  explicit DictionaryClient(std::map<std::string, std::string> dict);
  static DictionaryClient from_file(const std::string& path);  // "source<TAB>target" lines

  std::string id() const override { return "dictionary"; }
  std::vector<std::string> translate_batch(const std::vector<std::string>& segments,
                                           const std::string& source_lang,
                                           const std::string& target_lang) override;

 private:
  std::map<std::string, std::string> dict_;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{250};
  double backoff_multiplier = 2.0;
};

// Retries ClientError failures of the wrapped client with exponential
// backoff. The sleeper is injectable for tests.
class RetryingClient : public TranslationClient {
 public:
  RetryingClient(std::shared_ptr<TranslationClient> inner, RetryPolicy policy = {},
                 std::function<void(std::chrono::milliseconds)> sleeper = {});

  std::string id() const override { return inner_->id(); }
  std::vector<std::string> translate_batch(const std::vector<std::string>& segments,
                                           const std::string& source_lang,
                                           const std::string& target_lang) override;

 private:
  std::shared_ptr<TranslationClient> inner_;
  RetryPolicy policy_;
  std::function<void(std::chrono::milliseconds)> sleeper_;
};

struct RateLimit {
  double capacity = 4.0;         // bucket size, in requests
  double refill_per_second = 2.0;
};

// Token-bucket rate limiter in front of the wrapped client. Clock and
// sleeper are injectable for tests; defaults use the steady clock.
class RateLimitedClient : public TranslationClient {
 public:
  RateLimitedClient(std::shared_ptr<TranslationClient> inner, RateLimit limit = {},
                    std::function<double()> now_seconds = {},
                    std::function<void(double)> sleep_seconds = {});

  std::string id() const override { return inner_->id(); }
  std::vector<std::string> translate_batch(const std::vector<std::string>& segments,
                                           const std::string& source_lang,
                                           const std::string& target_lang) override;

 private:
  std::shared_ptr<TranslationClient> inner_;
  RateLimit limit_;
  std::function<double()> now_;
  std::function<void(double)> sleep_;
  std::mutex mu_;  // bucket state is shared across worker threads
  double tokens_;
  double last_refill_;
};

}  // namespace rstparse::translation
