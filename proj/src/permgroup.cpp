#include "plateau/permgroup.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace plateau {

Permutation Permutation::identity(int degree) {
  if (degree < 1) throw GroupError("permutation degree must be >= 1");
  std::vector<int> img(degree);
  for (int i = 0; i < degree; ++i) img[i] = i + 1;
  Permutation p;
  p.image_ = std::move(img);
  return p;
}

Permutation Permutation::from_image(std::vector<int> image) {
  const int d = static_cast<int>(image.size());
  if (d < 1) throw GroupError("empty permutation image");
  std::vector<bool> seen(d, false);
  for (int v : image) {
    if (v < 1 || v > d || seen[v - 1])
      throw GroupError("permutation image is not a bijection of {1..d}");
    seen[v - 1] = true;
  }
  Permutation p;
  p.image_ = std::move(image);
  return p;
}

Permutation Permutation::cycle(int degree, const std::vector<int>& points) {
  Permutation p = identity(degree);
  if (points.size() < 2) return p;
  for (size_t i = 0; i < points.size(); ++i) {
    int from = points[i];
    int to = points[(i + 1) % points.size()];
    if (from < 1 || from > degree || to < 1 || to > degree)
      throw GroupError("cycle point out of range");
    p.image_[from - 1] = to;
  }
  // Validate (rejects repeated points).
  return from_image(p.image_);
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (image_[i] != i + 1) return false;
  return true;
}

int Permutation::apply(int point) const {
  if (point < 1 || point > degree()) throw GroupError("point out of range");
  return image_[point - 1];
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (int i = 0; i < degree(); ++i) inv[image_[i] - 1] = i + 1;
  Permutation p;
  p.image_ = std::move(inv);
  return p;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw GroupError("permutation degree mismatch");
  std::vector<int> img(a.image_.size());
  for (int i = 0; i < a.degree(); ++i) img[i] = b.image_[a.image_[i] - 1];
  Permutation p;
  p.image_ = std::move(img);
  return p;
}

Permutation Permutation::power(int e) const {
  Permutation base = e >= 0 ? *this : inverse();
  int n = e >= 0 ? e : -e;
  Permutation acc = identity(degree());
  for (int i = 0; i < n; ++i) acc = acc * base;
  return acc;
}

bool Permutation::has_fixed_point() const {
  for (int i = 0; i < degree(); ++i)
    if (image_[i] == i + 1) return true;
  return false;
}

std::string Permutation::str() const {
  std::vector<bool> done(degree(), false);
  std::ostringstream out;
  bool any = false;
  for (int s = 1; s <= degree(); ++s) {
    if (done[s - 1] || image_[s - 1] == s) continue;
    out << '(';
    int x = s;
    bool first = true;
    while (!done[x - 1]) {
      done[x - 1] = true;
      if (!first) out << ' ';
      out << x;
      first = false;
      x = image_[x - 1];
    }
    out << ')';
    any = true;
  }
  return any ? out.str() : "id";
}

Word::Word(std::vector<Letter> letters) {
  for (const Letter& l : letters) {
    if (l.exponent != 1 && l.exponent != -1) throw GroupError("letter exponent must be +-1");
    if (!letters_.empty() && letters_.back().generator == l.generator &&
        letters_.back().exponent == -l.exponent) {
      letters_.pop_back();  // free reduction
    } else {
      letters_.push_back(l);
    }
  }
}

Word Word::parse(const std::string& text, const std::vector<std::string>& generators) {
  std::vector<Letter> letters;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    const bool inv = std::isupper(static_cast<unsigned char>(c)) != 0;
    std::string name(1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    int idx = -1;
    for (size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == name) idx = static_cast<int>(i);
    if (idx < 0) throw GroupError("unknown generator '" + name + "' in word \"" + text + "\"");
    letters.push_back({idx, inv ? -1 : 1});
  }
  return Word(std::move(letters));
}

Word Word::inverse() const {
  std::vector<Letter> rev;
  rev.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    rev.push_back({it->generator, -it->exponent});
  return Word(std::move(rev));
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> cat = a.letters_;
  cat.insert(cat.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(cat));
}

std::string Word::str(const std::vector<std::string>& generators) const {
  std::string out;
  for (const Letter& l : letters_) {
    std::string g = generators.at(static_cast<size_t>(l.generator));
    if (l.exponent < 0)
      for (char& c : g) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    out += g;
  }
  return out;
}

int Presentation::generator_index(const std::string& name) const {
  for (size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name) return static_cast<int>(i);
  return -1;
}

Homomorphism::Homomorphism(Presentation presentation, std::vector<Permutation> images)
    : presentation_(std::move(presentation)), images_(std::move(images)) {
  if (images_.size() != presentation_.generators.size())
    throw GroupError("one image per generator required");
  if (images_.empty()) throw GroupError("empty presentation");
  degree_ = images_[0].degree();
  for (const auto& p : images_)
    if (p.degree() != degree_) throw GroupError("mixed image degrees");
  for (const Word& r : presentation_.relators)
    if (!evaluate(r).is_identity())
      throw GroupError("relator " + r.str(presentation_.generators) +
                       " does not map to the identity");
}

Permutation Homomorphism::evaluate(const Word& w) const {
  Permutation acc = Permutation::identity(degree_);
  for (const Letter& l : w.letters()) {
    if (l.generator < 0 || l.generator >= static_cast<int>(images_.size()))
      throw GroupError("word uses an unknown generator");
    acc = acc * images_[static_cast<size_t>(l.generator)].power(l.exponent);
  }
  return acc;
}

bool check_relations(const Presentation& pres, const std::vector<Permutation>& images) {
  if (images.size() != pres.generators.size()) throw GroupError("one image per generator required");
  if (images.empty()) return true;
  const int d = images[0].degree();
  for (const Word& r : pres.relators) {
    Permutation acc = Permutation::identity(d);
    for (const Letter& l : r.letters())
      acc = acc * images[static_cast<size_t>(l.generator)].power(l.exponent);
    if (!acc.is_identity()) return false;
  }
  return true;
}

int subgroup_index(const Homomorphism& hom, int basepoint) {
  const int d = hom.degree();
  if (basepoint < 1 || basepoint > d) throw GroupError("basepoint out of range");
  std::vector<bool> in_orbit(static_cast<size_t>(d) + 1, false);
  std::vector<int> stack{basepoint};
  in_orbit[static_cast<size_t>(basepoint)] = true;
  int count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const Permutation& g : hom.images()) {
      for (int y : {g.apply(x), g.inverse().apply(x)}) {
        if (!in_orbit[static_cast<size_t>(y)]) {
          in_orbit[static_cast<size_t>(y)] = true;
          ++count;
          stack.push_back(y);
        }
      }
    }
  }
  return count;
}

std::vector<Permutation> group_closure(const std::vector<Permutation>& gens) {
  if (gens.empty()) throw GroupError("closure of empty generating set");
  const int d = gens[0].degree();
  if (d > 6) throw GroupError("subgroup closure capped at degree 6");
  std::set<Permutation> closed;
  std::vector<Permutation> frontier{Permutation::identity(d)};
  closed.insert(frontier[0]);
  while (!frontier.empty()) {
    Permutation x = frontier.back();
    frontier.pop_back();
    for (const Permutation& g : gens) {
      Permutation y = x * g;
      if (closed.insert(y).second) frontier.push_back(y);
    }
  }
  return {closed.begin(), closed.end()};
}

bool is_normal(const Homomorphism& hom, int basepoint) {
  const int d = hom.degree();
  if (basepoint < 1 || basepoint > d) throw GroupError("basepoint out of range");
  std::vector<Permutation> image = group_closure(hom.images());
  std::set<Permutation> stab;
  for (const Permutation& g : image)
    if (g.fixes(basepoint)) stab.insert(g);
  for (const Permutation& g : image) {
    const Permutation gi = g.inverse();
    for (const Permutation& h : stab)
      if (!stab.count(g * h * gi)) return false;
  }
  return true;
}

bool in_subgroup(const Homomorphism& hom, int basepoint, const Word& w) {
  return hom.evaluate(w).fixes(basepoint);
}

}  // namespace plateau
