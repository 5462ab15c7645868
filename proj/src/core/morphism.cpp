#include "core/morphism.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace circw {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::vector<Symbol>> decode_images(const char* const* table, std::size_t count) {
  std::vector<std::vector<Symbol>> images(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (const char* p = table[i]; *p; ++p) images[i].push_back(static_cast<Symbol>(*p - '0'));
  }
  return images;
}

// Image tables are data; the checksums catch accidental edits.
const char* const kMuImages[6] = {
    "012102120102012", "201020121012021", "012102010212010",
    "201210212021012", "102120121012021", "102010212021012",
};
constexpr std::uint64_t kMuChecksum = 0x99a7106af6ed6fceULL;

const char* const kPsiImages[6] = {
    "0435", "2341", "3542", "3540", "4134", "4105",
};
constexpr std::uint64_t kPsiChecksum = 0xdebfa6359227bf33ULL;

const char* const kTmImages[2] = {"01", "10"};
constexpr std::uint64_t kTmChecksum = 0x8a8e70a5edb7b129ULL;

std::uint64_t table_checksum(const char* const* table, std::size_t count) {
  std::string joined;
  for (std::size_t i = 0; i < count; ++i) {
    joined += table[i];
    joined += '\n';
  }
  return fnv1a(joined);
}

UniformMorphism make_builtin(const char* const* table, std::size_t count, int src_k, int tgt_k,
                             std::uint64_t checksum, const char* name) {
  if (table_checksum(table, count) != checksum)
    fail(Errc::argument, std::string("builtin morphism table corrupted: ") + name);
  return UniformMorphism(src_k, tgt_k, decode_images(table, count), name);
}

}  // namespace

UniformMorphism::UniformMorphism(int source_alphabet, int target_alphabet,
                                 std::vector<std::vector<Symbol>> images, std::string name)
    : src_k_(source_alphabet), tgt_k_(target_alphabet), images_(std::move(images)),
      name_(std::move(name)) {
  if (src_k_ < 1 || tgt_k_ < 1) fail(Errc::argument, "alphabet sizes must be >= 1");
  if (images_.size() != static_cast<std::size_t>(src_k_))
    fail(Errc::argument, "need exactly one image per source symbol");
  if (images_[0].empty()) fail(Errc::argument, "images must be nonempty");
  q_ = images_[0].size();
  for (const auto& im : images_) {
    if (im.size() != q_) fail(Errc::argument, "morphism is not uniform");
    for (Symbol s : im)
      if (s >= tgt_k_) fail(Errc::alphabet, "image symbol outside target alphabet");
  }
}

const UniformMorphism& UniformMorphism::mu() {
  static const UniformMorphism m = make_builtin(kMuImages, 6, 6, 3, kMuChecksum, "mu");
  return m;
}

const UniformMorphism& UniformMorphism::psi() {
  static const UniformMorphism m = make_builtin(kPsiImages, 6, 6, 6, kPsiChecksum, "psi");
  return m;
}

const UniformMorphism& UniformMorphism::thue_morse() {
  static const UniformMorphism m = make_builtin(kTmImages, 2, 2, 2, kTmChecksum, "thue-morse");
  return m;
}

std::optional<UniformMorphism> UniformMorphism::builtin(const std::string& name) {
  if (name == "mu") return mu();
  if (name == "psi") return psi();
  if (name == "thue-morse" || name == "tm") return thue_morse();
  return std::nullopt;
}

UniformMorphism UniformMorphism::parse(const std::string& text, std::string name) {
  std::istringstream in(text);
  int src_k = 0, tgt_k = 0;
  std::size_t q = 0;
  if (!(in >> src_k >> tgt_k >> q)) fail(Errc::parse, "morphism header must be 'k_source k_target q'");
  std::vector<std::vector<Symbol>> images;
  std::string line;
  std::getline(in, line);
  while (static_cast<int>(images.size()) < src_k && std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    std::vector<Symbol> im;
    for (char c : line) {
      if (c < '0' || c > '9') fail(Errc::parse, "morphism images must be digit strings");
      im.push_back(static_cast<Symbol>(c - '0'));
    }
    if (im.size() != q) fail(Errc::parse, "image length differs from declared arity");
    images.push_back(std::move(im));
  }
  if (static_cast<int>(images.size()) != src_k) fail(Errc::parse, "missing morphism images");
  return UniformMorphism(src_k, tgt_k, std::move(images), std::move(name));
}

UniformMorphism UniformMorphism::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io, "cannot open morphism file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

std::string UniformMorphism::file_text() const {
  std::string out = std::to_string(src_k_) + " " + std::to_string(tgt_k_) + " " +
                    std::to_string(q_) + "\n";
  for (const auto& im : images_) {
    for (Symbol s : im) out.push_back(static_cast<char>('0' + s));
    out.push_back('\n');
  }
  return out;
}

std::vector<Symbol> UniformMorphism::apply_raw(SymSpan w) const {
  std::vector<Symbol> out;
  out.reserve(w.size() * q_);
  for (Symbol a : w) {
    if (a >= src_k_) fail(Errc::alphabet, "symbol outside the morphism's source alphabet");
    const auto& im = images_[a];
    out.insert(out.end(), im.begin(), im.end());
  }
  return out;
}

Word UniformMorphism::apply(const Word& w) const {
  return Word(apply_raw(w.span()), tgt_k_);
}

std::optional<std::string> UniformMorphism::prolongable_failure(Symbol seed) const {
  if (seed >= src_k_) return "seed symbol outside the source alphabet";
  if (tgt_k_ > src_k_) return "morphism does not map its alphabet into itself";
  if (q_ < 2) return "arity must be at least 2 to prolong";
  if (images_[seed][0] != seed) return "image of the seed does not start with the seed";
  return std::nullopt;
}

Word UniformMorphism::fixed_point_prefix(Symbol seed, std::size_t n) const {
  if (auto why = prolongable_failure(seed))
    fail(Errc::precondition, "morphism not prolongable: " + *why);
  if (n == 0) return Word({}, src_k_);
  std::vector<Symbol> u{seed};
  while (u.size() < n) {
    // Applying h to the shortest prefix that already covers n keeps the
    // intermediate words small.
    std::size_t need = (n + q_ - 1) / q_;
    if (u.size() > need) u.resize(need);
    u = apply_raw(SymSpan(u));
  }
  u.resize(n);
  return Word(std::move(u), src_k_);
}

std::optional<SyncCounterexample> UniformMorphism::synchronizing_counterexample() const {
  const std::size_t q = q_;
  std::vector<Symbol> ab(2 * q);
  for (Symbol a = 0; a < src_k_; ++a) {
    std::copy(images_[a].begin(), images_[a].end(), ab.begin());
    for (Symbol b = 0; b < src_k_; ++b) {
      std::copy(images_[b].begin(), images_[b].end(), ab.begin() + q);
      for (Symbol c = 0; c < src_k_; ++c) {
        const auto& im = images_[c];
        for (std::size_t off = 0; off + q <= 2 * q; ++off) {
          if (!std::equal(im.begin(), im.end(), ab.begin() + off)) continue;
          if (off == 0 && a == c) continue;
          if (off == q && b == c) continue;
          return SyncCounterexample{a, b, c, off};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<SsmCounterexample> UniformMorphism::strongly_synchronizing_counterexample() const {
  for (Symbol c = 0; c < src_k_; ++c) {
    const auto& im = images_[c];
    for (Symbol a = 0; a < src_k_; ++a)
      for (Symbol b = 0; b < src_k_; ++b) {
        if (a == c || b == c) continue;
        for (std::size_t split = 0; split <= q_; ++split) {
          bool x_ok = std::equal(im.begin(), im.begin() + split, images_[a].begin());
          bool y_ok = std::equal(im.begin() + split, im.end(), images_[b].end() - (q_ - split));
          if (x_ok && y_ok) return SsmCounterexample{a, b, c, split};
        }
      }
  }
  return std::nullopt;
}

bool power_alignment_instance_holds(const UniformMorphism& h, const Word& w, unsigned n) {
  if (n <= 1) fail(Errc::argument, "power order n must exceed 1");
  const auto hw = h.apply_raw(w.span());
  const std::size_t q = h.arity();
  for (std::size_t p = 1; p * n <= hw.size(); ++p) {
    bool is_power = true;
    for (std::size_t x = p; x < p * n && is_power; ++x) is_power = hw[x] == hw[x - p];
    if (!is_power || p < q) continue;
    if (p % q != 0) return false;
    const std::size_t up = p / q;
    if (up * n > w.size()) return false;
    bool u_power = true;
    for (std::size_t x = up; x < up * n && u_power; ++x) u_power = w[x] == w[x - up];
    if (!u_power) return false;
  }
  return true;
}

bool check_power_alignment(const UniformMorphism& h, const Word& w, unsigned n) {
  if (!h.is_synchronizing())
    fail(Errc::precondition, "power alignment check requires a synchronizing morphism");
  return power_alignment_instance_holds(h, w, n);
}

Word main_word_prefix(std::size_t n) {
  const auto& mu = UniformMorphism::mu();
  const auto& psi = UniformMorphism::psi();
  if (n == 0) return Word({}, 3);
  const std::size_t inner = (n + mu.arity() - 1) / mu.arity();
  Word base = psi.fixed_point_prefix(0, inner);
  auto out = mu.apply_raw(base.span());
  out.resize(n);
  return Word(std::move(out), 3);
}

}  // namespace circw
