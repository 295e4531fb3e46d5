#include "ncrat/word.hpp"

#include <algorithm>

namespace ncrat {

Word Word::from_indices(const std::vector<int>& one_based) {
  std::vector<int> letters;
  letters.reserve(one_based.size());
  for (int i : one_based) letters.push_back(i - 1);
  return Word(std::move(letters));
}

Word Word::transposed() const {
  return Word(std::vector<int>(letters_.rbegin(), letters_.rend()));
}

Word Word::operator+(const Word& rhs) const {
  std::vector<int> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

Word Word::prepended(int letter) const {
  std::vector<int> out;
  out.reserve(letters_.size() + 1);
  out.push_back(letter);
  out.insert(out.end(), letters_.begin(), letters_.end());
  return Word(std::move(out));
}

Word Word::tail(std::size_t from) const {
  return Word(std::vector<int>(letters_.begin() + static_cast<std::ptrdiff_t>(from), letters_.end()));
}

Word Word::head(std::size_t count) const {
  return Word(std::vector<int>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(count)));
}

bool Word::valid_for(int g) const {
  return std::all_of(letters_.begin(), letters_.end(), [g](int l) { return l >= 0 && l < g; });
}

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += '*';
    out += 'x' + std::to_string(letters_[i] + 1);
  }
  return out;
}

std::strong_ordering Word::operator<=>(const Word& rhs) const {
  if (auto c = letters_.size() <=> rhs.letters_.size(); c != 0) return c;
  return letters_ <=> rhs.letters_;
}

std::vector<Word> words_up_to(int g, int max_length) {
  std::vector<Word> out{Word()};
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (int j = 0; j < g; ++j) out.push_back(out[i] + Word{j});
    }
    level_begin = level_end;
  }
  return out;
}

}  // namespace ncrat
