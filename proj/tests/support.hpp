#pragma once

// Random generators for the property tests. Seeds are fixed so failures
// reproduce.

#include <random>
#include <string>
#include <vector>

#include "mcg/engine.hpp"
#include "mcg/surface.hpp"
#include "mcg/word.hpp"

namespace mcg::testing {

inline std::mt19937& rng() {
  static std::mt19937 g(20240611u);
  return g;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Letter random_letter(int rank) {
  const int k = uniform(1, rank);
  return uniform(0, 1) ? k : -k;
}

/// Unreduced letter sequence.
inline std::vector<Letter> random_letters(int rank, int max_len) {
  std::vector<Letter> out(static_cast<std::size_t>(uniform(0, max_len)));
  for (Letter& l : out) l = random_letter(rank);
  return out;
}

inline Word random_word(int rank, int max_len) { return Word(random_letters(rank, max_len)); }

inline std::vector<std::string> twist_names(const SurfaceModel& m) {
  std::vector<std::string> out;
  for (const auto& [name, entry] : m.twists()) out.push_back(name.str());
  return out;
}

inline MappingClassWord random_mapping_class(const SurfaceModel& m, int max_len) {
  const auto names = twist_names(m);
  std::vector<Factor> f;
  const int len = uniform(0, max_len);
  for (int i = 0; i < len; ++i)
    f.push_back({names[static_cast<std::size_t>(uniform(0, static_cast<int>(names.size()) - 1))], uniform(0, 1) ? 1 : -1});
  return MappingClassWord(std::move(f));
}

/// Random automorphism of the free group: a product of table twists.
inline Endomorphism random_automorphism(const SurfaceModel& m, int max_len) {
  return evaluate(random_mapping_class(m, max_len), m);
}

/// Arbitrary endomorphism with random generator images.
inline Endomorphism random_endomorphism(int rank, int max_len) {
  std::vector<Word> images;
  for (int k = 0; k < rank; ++k) images.push_back(random_word(rank, max_len));
  return Endomorphism(std::move(images));
}

}  // namespace mcg::testing
