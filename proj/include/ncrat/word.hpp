#ifndef NCRAT_WORD_HPP
#define NCRAT_WORD_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace ncrat {

/// A word in the free semigroup on x_1..x_g. Letters are stored 0-based
/// (letter j means x_{j+1}); the empty word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<int> letters) : letters_(letters) {}

  /// Word from 1-based variable indices, e.g. from_indices({1, 2}) = x1 x2.
  static Word from_indices(const std::vector<int>& one_based);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<int>& letters() const noexcept { return letters_; }

  /// Letter order reversed.
  Word transposed() const;

  Word operator+(const Word& rhs) const;  // concatenation
  Word prepended(int letter) const;
  Word tail(std::size_t from) const;      // letters [from, end)
  Word head(std::size_t count) const;     // letters [0, count)

  /// Every letter lies in 0..g-1.
  bool valid_for(int g) const;

  /// "x1*x2"; the empty word prints as "1".
  std::string to_string() const;

  /// Ordering by (length, lexicographic letters).
  std::strong_ordering operator<=>(const Word& rhs) const;
  bool operator==(const Word& rhs) const = default;

 private:
  std::vector<int> letters_;
};

/// All words over g letters of length <= max_length, in (length, lex) order.
std::vector<Word> words_up_to(int g, int max_length);

}  // namespace ncrat

#endif  // NCRAT_WORD_HPP
