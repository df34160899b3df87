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

#include "tslec/lexicon.hpp"

#include <cctype>
#include <stdexcept>

namespace tslec {

const char* intent_name(Intent intent) {
  switch (intent) {
    case Intent::kDemand:
      return "DEMAND";
    case Intent::kOffer:
      return "OFFER";
    case Intent::kRequest:
      return "REQUEST";
  }
  return "?";
}

std::optional<Intent> intent_from_name(const std::string& name) {
  if (name == "DEMAND") return Intent::kDemand;
  if (name == "OFFER") return Intent::kOffer;
  if (name == "REQUEST") return Intent::kRequest;
  return std::nullopt;
}

std::string Symbol::text() const {
  static const char* digits = "0123456789abcdef";
  std::string hex;
  int c = counter;
  if (c == 0) hex = "0";
  while (c > 0) {
    hex.insert(hex.begin(), digits[c & 0xf]);
    c >>= 4;
  }
  return "@" + std::to_string(owner) + hex;
}

std::optional<Symbol> parse_symbol(const std::string& text) {
  // Owner is decimal and vocabularies never exceed two hex digits of
  // counters here, but parsing stays general: the owner is the decimal
  // prefix, the counter the hex suffix. The split is unambiguous because
  // encode() never produces an empty counter and owners are < 10 in
  // every supported configuration.
  if (text.size() < 3 || text[0] != '@') return std::nullopt;
  if (!std::isdigit(static_cast<unsigned char>(text[1]))) return std::nullopt;
  int owner = text[1] - '0';
  int counter = 0;
  for (size_t i = 2; i < text.size(); ++i) {
    char ch = text[i];
    int d;
    if (ch >= '0' && ch <= '9')
      d = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
      d = ch - 'a' + 10;
    else
      return std::nullopt;
    counter = counter * 16 + d;
  }
  return Symbol{owner, counter};
}

std::pair<Symbol, bool> Vocabulary::encode(const Concept& c) {
  int key = c.key(n_items_);
  auto it = counter_by_key_.find(key);
  if (it != counter_by_key_.end())
    return {entries_[it->second].second, false};
  Symbol s{owner_, static_cast<int>(entries_.size())};
  counter_by_key_.emplace(key, s.counter);
  entries_.emplace_back(c, s);
  if (c.kind == Concept::Kind::kLine) ++line_size_;
  return {s, true};
}

std::optional<Concept> Vocabulary::decode(const Symbol& s) const {
  if (s.owner != owner_ || s.counter < 0 ||
      s.counter >= static_cast<int>(entries_.size()))
    return std::nullopt;
  return entries_[s.counter].first;
}

std::optional<Symbol> Vocabulary::lookup(const Concept& c) const {
  auto it = counter_by_key_.find(c.key(n_items_));
  if (it == counter_by_key_.end()) return std::nullopt;
  return entries_[it->second].second;
}

std::vector<Concept> decode_true(const Vocabulary& sender_vocab,
                                 const Message& message) {
  std::vector<Concept> out;
  out.reserve(message.symbols.size());
  for (const Symbol& s : message.symbols) {
    auto c = sender_vocab.decode(s);
    if (!c)
      throw std::logic_error("decode_true: symbol not in sender vocabulary");
    out.push_back(*c);
  }
  return out;
}

std::optional<Concept> ListenerModel::decode_symbol(const Symbol& s) const {
  if (s.owner != speaker_) return std::nullopt;
  auto it = map_.find(s.counter);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void ListenerModel::reveal(const Symbol& s, const Concept& c) {
  if (s.owner != speaker_) return;
  map_.emplace(s.counter, c);
}

DecodeResult decode_observed(const ListenerModel& model,
                             const Message& message) {
  DecodeResult r;
  r.concepts.reserve(message.symbols.size());
  int known = 0;
  for (const Symbol& s : message.symbols) {
    auto c = model.decode_symbol(s);
    if (c) ++known;
    r.concepts.push_back(c);
  }
  r.accuracy = message.symbols.empty()
                   ? 1.0
                   : static_cast<double>(known) / message.symbols.size();
  return r;
}

void reveal_round(std::vector<std::vector<ListenerModel>>& models,
                  const std::vector<Message>& messages,
                  const std::vector<Vocabulary>& vocabs) {
  for (const Message& m : messages) {
    const Vocabulary& vocab = vocabs[m.sender];
    for (const Symbol& s : m.symbols) {
      auto c = vocab.decode(s);
      if (!c)
        throw std::logic_error("reveal_round: sender lacks its own symbol");
      for (size_t listener = 0; listener < models.size(); ++listener) {
        if (static_cast<int>(listener) == m.sender) continue;
        models[listener][m.sender].reveal(s, *c);
      }
    }
  }
}

}  // namespace tslec
