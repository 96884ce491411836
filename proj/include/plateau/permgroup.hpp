#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Permutations of {1..d}, words over finitely presented groups, and
// homomorphisms into S_d. Composition is left-to-right throughout the
// project: (p * q) means "apply p first, then q".

namespace plateau {

class GroupError : public std::runtime_error {
 public:
  explicit GroupError(const std::string& what) : std::runtime_error(what) {}
};

class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int degree);
  // image[i] is the image of point i+1, 1-based.
  static Permutation from_image(std::vector<int> image);
  // Cycle notation helper: transposition/cycle on 1-based points, e.g.
  // cycle(3, {1, 2}) == (1 2) in S_3.
  static Permutation cycle(int degree, const std::vector<int>& points);

  int degree() const { return static_cast<int>(image_.size()); }
  bool is_identity() const;
  int apply(int point) const;  // 1-based

  Permutation inverse() const;
  // Left-to-right composition: (a * b).apply(x) == b.apply(a.apply(x)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  Permutation power(int e) const;  // e may be negative

  bool fixes(int point) const { return apply(point) == point; }
  bool has_fixed_point() const;

  const std::vector<int>& image() const { return image_; }
  bool operator==(const Permutation& o) const { return image_ == o.image_; }
  bool operator!=(const Permutation& o) const { return !(*this == o); }
  bool operator<(const Permutation& o) const { return image_ < o.image_; }

  // Cycle notation, e.g. "(1 2 3)" or "id".
  std::string str() const;

 private:
  std::vector<int> image_;
};

// A letter is a generator index with exponent +1/-1; a word is freely
// reduced on construction.
struct Letter {
  int generator = 0;
  int exponent = 1;
  bool operator==(const Letter& o) const {
    return generator == o.generator && exponent == o.exponent;
  }
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  // Compact string form over single-character generator names:
  // lowercase = generator, uppercase = its inverse ("abAB").
  static Word parse(const std::string& text, const std::vector<std::string>& generators);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  Word inverse() const;
  friend Word operator*(const Word& a, const Word& b);
  std::string str(const std::vector<std::string>& generators) const;

 private:
  std::vector<Letter> letters_;  // freely reduced
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;  // each relator == identity

  int generator_index(const std::string& name) const;
};

class Homomorphism {
 public:
  // Checks every relator maps to the identity; throws GroupError otherwise.
  Homomorphism(Presentation presentation, std::vector<Permutation> images);

  const Presentation& presentation() const { return presentation_; }
  const std::vector<Permutation>& images() const { return images_; }
  int degree() const { return degree_; }

  Permutation evaluate(const Word& w) const;

 private:
  Presentation presentation_;
  std::vector<Permutation> images_;
  int degree_ = 0;
};

// True iff every relator evaluates to the identity under the images.
bool check_relations(const Presentation& pres, const std::vector<Permutation>& images);

// Orbit size of basepoint under <images>; equals the index of
// H = phi^{-1}(Stab(basepoint)) in the presented group.
int subgroup_index(const Homomorphism& hom, int basepoint);

// Whether Stab(basepoint) cut with im(phi) is normal in im(phi), computed by
// closing the image subgroup. Degrees above 6 are rejected (|S_6| = 720).
bool is_normal(const Homomorphism& hom, int basepoint);

// Whether evaluate(w) fixes basepoint, i.e. w lies in H.
bool in_subgroup(const Homomorphism& hom, int basepoint, const Word& w);

// Full closure of the subgroup generated by gens (degree <= 6 enforced).
std::vector<Permutation> group_closure(const std::vector<Permutation>& gens);

}  // namespace plateau
