// Copyright 2026 The TSLEC Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TSLEC_LEXICON_HPP_
#define TSLEC_LEXICON_HPP_

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tslec {

enum class Intent : int { kDemand = 0, kOffer = 1, kRequest = 2 };

const char* intent_name(Intent intent);
std::optional<Intent> intent_from_name(const std::string& name);

// A transmissible meaning unit. Proposal lines are (intent, item, qty)
// triples; strategy markers are the two per-agent slots used to broadcast
// taught strategies, and live in the same vocabulary.
struct Concept {
  enum class Kind : int { kLine = 0, kStrategy = 1 };
  Kind kind = Kind::kLine;
  Intent intent = Intent::kDemand;
  int item = 0;
  int qty = 1;
  int slot = 0;  // strategy marker slot, 0 or 1

  static Concept line(Intent intent, int item, int qty) {
    Concept c;
    c.kind = Kind::kLine;
    c.intent = intent;
    c.item = item;
    c.qty = qty;
    return c;
  }
  static Concept strategy_marker(int slot) {
    Concept c;
    c.kind = Kind::kStrategy;
    c.slot = slot;
    return c;
  }

  // Dense per-vocabulary key: line concepts occupy [0, 9*n_items), markers
  // follow. qty is capped at 3 so the line space is 3 intents x M x 3.
  int key(int n_items) const {
    if (kind == Kind::kLine)
      return (static_cast<int>(intent) * n_items + item) * 3 + (qty - 1);
    return 9 * n_items + slot;
  }

  bool operator==(const Concept& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::kStrategy) return slot == o.slot;
    return intent == o.intent && item == o.item && qty == o.qty;
  }
};

struct Symbol {
  int owner = 0;
  int counter = 0;

  // "@" + decimal owner + lowercase hex counter, unpadded.
  std::string text() const;
  bool operator==(const Symbol& o) const {
    return owner == o.owner && counter == o.counter;
  }
};

std::optional<Symbol> parse_symbol(const std::string& text);

struct Message {
  int sender = 0;
  std::vector<Symbol> symbols;
};

// An agent's own concept-to-symbol map. Symbols are minted lazily in
// creation order, so the counter doubles as the entry index.
class Vocabulary {
 public:
  explicit Vocabulary(int owner, int n_items = 5)
      : owner_(owner), n_items_(n_items) {}

  // Existing concept returns its symbol with created=false; a new concept
  // mints "@" + owner + hex(size) and returns created=true.
  std::pair<Symbol, bool> encode(const Concept& c);

  std::optional<Concept> decode(const Symbol& s) const;
  std::optional<Symbol> lookup(const Concept& c) const;

  int owner() const { return owner_; }
  int n_items() const { return n_items_; }
  int size() const { return static_cast<int>(entries_.size()); }
  int line_size() const { return line_size_; }

  const std::vector<std::pair<Concept, Symbol>>& entries() const {
    return entries_;
  }

 private:
  int owner_;
  int n_items_;
  int line_size_ = 0;
  std::unordered_map<int, int> counter_by_key_;
  std::vector<std::pair<Concept, Symbol>> entries_;
};

// Exact inverse of encode using the sender's own vocabulary.
std::vector<Concept> decode_true(const Vocabulary& sender_vocab,
                                 const Message& message);

// What one listener has learned of one speaker's vocabulary. Always a
// subset of the truth: mappings are only added by end-of-round reveals,
// never guessed, so decoding errors are omissions rather than confusions.
class ListenerModel {
 public:
  ListenerModel() = default;
  explicit ListenerModel(int speaker) : speaker_(speaker) {}

  std::optional<Concept> decode_symbol(const Symbol& s) const;
  void reveal(const Symbol& s, const Concept& c);
  int known() const { return static_cast<int>(map_.size()); }
  int speaker() const { return speaker_; }

 private:
  int speaker_ = -1;
  std::unordered_map<int, Concept> map_;  // counter -> concept
};

struct DecodeResult {
  std::vector<std::optional<Concept>> concepts;
  double accuracy = 1.0;  // known / total; 1.0 for an empty message
};

DecodeResult decode_observed(const ListenerModel& model,
                             const Message& message);

// End-of-round reveal: every listener learns the true concept behind every
// symbol broadcast this round. models[listener][speaker].
void reveal_round(std::vector<std::vector<ListenerModel>>& models,
                  const std::vector<Message>& messages,
                  const std::vector<Vocabulary>& vocabs);

}  // namespace tslec

#endif  // TSLEC_LEXICON_HPP_
