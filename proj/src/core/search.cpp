#include "core/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "core/circular.hpp"
#include "core/errors.hpp"
#include "core/factorset.hpp"
#include "core/periodicity.hpp"

namespace circw {

nlohmann::json SearchConfig::to_json() const {
  nlohmann::json j{{"k", alphabet_size},
                   {"alpha", threshold.value.str()},
                   {"strict", threshold.strict},
                   {"circular", circular},
                   {"max_length", max_length},
                   {"symmetry_reduction", symmetry_reduction},
                   {"threads", threads},
                   {"split_depth", split_depth}};
  if (square_bound) j["avoid_squares_below"] = *square_bound;
  return j;
}

SearchConfig SearchConfig::from_json(const nlohmann::json& j) {
  SearchConfig cfg;
  cfg.alphabet_size = j.value("k", 2);
  if (cfg.alphabet_size < 1 || cfg.alphabet_size > 10)
    fail(Errc::argument, "search alphabet size must be in 1..10");
  auto alpha = Rational::parse(j.value("alpha", std::string("2")));
  if (!alpha) fail(Errc::parse, "malformed rational threshold");
  cfg.threshold = PowerThreshold(*alpha, j.value("strict", false));
  cfg.circular = j.value("circular", false);
  if (j.contains("avoid_squares_below") && j["avoid_squares_below"].get<std::uint64_t>() > 0)
    cfg.square_bound = j["avoid_squares_below"].get<std::uint32_t>();
  cfg.max_length = j.value("max_length", std::size_t{500});
  if (cfg.max_length < 1 || cfg.max_length > 20000)
    fail(Errc::argument, "max_length must be in 1..20000");
  cfg.symmetry_reduction = j.value("symmetry_reduction", true);
  cfg.threads = j.value("threads", 1);
  cfg.split_depth = j.value("split_depth", std::size_t{6});
  return cfg;
}

nlohmann::json SearchResult::to_json(const SearchConfig& cfg) const {
  return nlohmann::json{{"config", cfg.to_json()},
                        {"longest_length", longest_length},
                        {"witness", witness.render()},
                        {"exhausted", exhausted},
                        {"nodes_visited", nodes_visited},
                        {"wall_time_ms", wall_time_ms},
                        {"stopped", stopped}};
}

IncrementalChecker::IncrementalChecker(const SearchConfig& cfg) : cfg_(cfg) {
  ta_ = cfg.threshold.value.num();
  tb_ = cfg.threshold.value.den();
  strict_ = cfg.threshold.strict;
  const std::size_t n = cfg.max_length;

  std::size_t pmax = static_cast<std::size_t>((static_cast<__int128>(n) * tb_) / ta_) + 2;
  if (cfg.square_bound) pmax = std::max<std::size_t>(pmax, (*cfg.square_bound - 1) / 2 + 1);
  pmax_ = std::min(pmax, n + 1);

  w_.assign(n + 2, 0);
  rows_.assign((n + 2) * (pmax_ + 2), 0);
  ord_thresh_.assign(pmax_ + 2, 0);
  tmax_.assign(pmax_ + 2, 0);
  for (std::size_t p = 1; p <= pmax_ + 1; ++p) {
    // smallest violating run length, and largest |t| a clean prefix can hold
    const std::int64_t ap = ta_ * static_cast<std::int64_t>(p);
    ord_thresh_[p] = strict_ ? static_cast<std::uint32_t>(ap / tb_ + 1)
                             : static_cast<std::uint32_t>((ap + tb_ - 1) / tb_);
    tmax_[p] = strict_ ? static_cast<std::uint32_t>(ap / tb_)
                       : static_cast<std::uint32_t>((ap - 1) / tb_);
  }
  sq_count_.assign(pmax_ + 2, 0);
  pos1_.assign(cfg.alphabet_size, {});
  pos2_.assign(static_cast<std::size_t>(cfg.alphabet_size) * cfg.alphabet_size, {});
}

#define CW_VIOL(len, p) \
  (strict_ ? static_cast<std::int64_t>(len) * tb_ > ta_ * static_cast<std::int64_t>(p) \
           : static_cast<std::int64_t>(len) * tb_ >= ta_ * static_cast<std::int64_t>(p))

std::optional<RepetitionWitness> IncrementalChecker::circular_violation(std::size_t np) const {
  const std::uint16_t* row = &rows_[np * (pmax_ + 2)];
  const Symbol* w = w_.data();
  const int k = cfg_.alphabet_size;
  const std::size_t pcap =
      std::min(pmax_, static_cast<std::size_t>((static_cast<__int128>(np) * tb_) / ta_) + 1);

  // Regime 1: the period fits inside the suffix part v, so t continues v's
  // cycle: t is a prefix of C_p with C_p[x] = w[np-p+(x%p)], ending by np-p.
  for (std::size_t p = 1; p + 1 <= np && p <= pcap; ++p) {
    const std::size_t Mp = row[p];
    std::size_t tcap = tmax_[p];
    if (!sq_count_[p]) tcap = std::min<std::size_t>(tcap, 2 * p - 1);
    const std::size_t room = np - p;  // t must end by here
    if (!CW_VIOL(Mp + std::min(tcap, room), p)) continue;
    const Symbol c0 = w[np - p];
    {
      const auto& lst = pos1_[c0];
      if (tcap >= 1 && !lst.empty() && lst.front() + 1 <= room) {
        const std::size_t i0 = lst.front();
        if (CW_VIOL(std::min(np - i0, Mp + 1), p)) {
          const std::size_t lv = std::min(np - (i0 + 1), Mp);
          return RepetitionWitness::circular(i0, i0 + 1, np - lv, np, p);
        }
      }
    }
    if (room < 2 || tcap < 2) continue;
    const Symbol c1 = (p >= 2) ? w[np - p + 1] : c0;
    const auto& lst = pos2_[static_cast<std::size_t>(c0) * k + c1];
    for (std::uint32_t iu : lst) {
      const std::size_t i = iu;
      if (i + 2 > room) break;
      const std::size_t xcap = std::min(tcap, room - i);
      if (!CW_VIOL(std::min(np - i, Mp + xcap), p)) continue;
      std::size_t x = 2;
      while (x < xcap && w[i + x] == w[np - p + (x % p)]) ++x;
      if (CW_VIOL(std::min(np - i, Mp + x), p)) {
        const std::size_t lv = std::min(np - (i + x), Mp);
        return RepetitionWitness::circular(i, i + x, np - lv, np, p);
      }
    }
  }

  // Regime 2: the period exceeds the suffix part, so s = (v c)^e and v must
  // reoccur earlier. At exponent >= 3 the second and third period copies are
  // adjacent inside the built part and leave a recorded square; below 3 the
  // reoccurrences are scanned directly.
  if (ta_ >= 3 * tb_) {
    for (const auto& ev : sq_events_) {
      const std::size_t p = ev.first;
      if (p > pcap) continue;
      const std::size_t e = ev.second;
      const std::size_t m = e - 2 * p;
      const std::size_t lv_max = std::min<std::size_t>(p - 1, np - e);
      const std::size_t lv_min = (p > m) ? p - m : 1;
      for (std::size_t lv = lv_min; lv <= lv_max; ++lv) {
        const std::size_t kk = np - lv;
        const std::size_t i = m - (p - lv);
        if (!CW_VIOL(lv + (kk - i), p)) continue;
        bool vocc = true;
        for (std::size_t r = 0; r < lv && vocc; ++r) vocc = w[m + r] == w[np - lv + r];
        if (!vocc) continue;
        bool crep = true;
        for (std::size_t r = 0; i + r < m && crep; ++r) crep = w[i + r] == w[m + lv + r];
        if (!crep) continue;
        std::size_t x = e;
        while (x < kk && w[x] == w[x - p]) ++x;
        if (CW_VIOL(lv + (x - i), p)) return RepetitionWitness::circular(i, x, kk, np, p);
      }
    }
  } else {
    for (std::size_t ep = 2; ep + 1 <= np; ++ep) {
      const std::size_t cap = std::min({ep, np - ep, pcap});
      std::size_t cs = 0;
      while (cs < cap && w[ep - 1 - cs] == w[np - 1 - cs]) ++cs;
      for (std::size_t lv = 1; lv <= cs; ++lv) {
        const std::size_t m = ep - lv;
        const std::size_t kk = np - lv;
        for (std::size_t i = m; i-- > 0;) {
          const std::size_t p = lv + (m - i);
          if (p > pcap) break;
          if (!CW_VIOL(lv + (kk - i), p)) break;
          std::size_t x = m + lv;
          while (x < kk && w[x] == w[x - p]) ++x;
          if (CW_VIOL(lv + (x - i), p)) return RepetitionWitness::circular(i, x, kk, np, p);
        }
      }
    }
  }
  return std::nullopt;
}

bool IncrementalChecker::try_push(Symbol c) {
  const std::size_t np = n_ + 1;
  w_[n_] = c;
  const std::size_t width = pmax_ + 2;
  const std::uint16_t* prev = &rows_[n_ * width];
  std::uint16_t* cur = &rows_[np * width];
  const std::uint32_t sqb = cfg_.square_bound ? *cfg_.square_bound : 0;

  const std::size_t plim = std::min(pmax_, np - 1);
  for (std::size_t p = 1; p <= plim; ++p) {
    const std::uint16_t base = (p == n_) ? static_cast<std::uint16_t>(p) : prev[p];
    const std::uint16_t r = (w_[np - 1] == w_[np - 1 - p])
                                ? static_cast<std::uint16_t>(base + 1)
                                : static_cast<std::uint16_t>(p);
    cur[p] = r;
    if (r >= ord_thresh_[p]) {
      last_violation_ = RepetitionWitness::plain(np - r, np, p);
      return false;
    }
    if (sqb && 2 * p < sqb && r >= 2 * p) {
      last_violation_ = RepetitionWitness::plain(np - 2 * p, np, p);
      return false;
    }
  }

  if (cfg_.circular && np >= 2) {
    if (ta_ >= 2 * tb_) {
      if (auto v = circular_violation(np)) {
        last_violation_ = v;
        return false;
      }
    } else {
      // Exponent targets below 2 fall back to the full scanner.
      std::vector<Symbol> tmp(w_.begin(), w_.begin() + np);
      if (auto v = find_circular_violation(SymSpan(tmp), cfg_.threshold)) {
        last_violation_ = v;
        return false;
      }
    }
  }

  sq_marks_.push_back(static_cast<std::uint32_t>(sq_events_.size()));
  for (std::size_t p = 1; 2 * p <= np && p <= plim; ++p) {
    if (cur[p] >= 2 * p) {
      sq_events_.emplace_back(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(np));
      ++sq_count_[p];
    }
  }
  pos1_[c].push_back(static_cast<std::uint32_t>(n_));
  if (n_ >= 1)
    pos2_[static_cast<std::size_t>(w_[n_ - 1]) * cfg_.alphabet_size + c].push_back(
        static_cast<std::uint32_t>(n_ - 1));
  n_ = np;
  return true;
}

#undef CW_VIOL

void IncrementalChecker::pop() {
  if (n_ == 0) fail(Errc::argument, "pop on empty search word");
  --n_;
  const Symbol c = w_[n_];
  pos1_[c].pop_back();
  if (n_ >= 1)
    pos2_[static_cast<std::size_t>(w_[n_ - 1]) * cfg_.alphabet_size + c].pop_back();
  const std::uint32_t mark = sq_marks_.back();
  sq_marks_.pop_back();
  while (sq_events_.size() > mark) {
    --sq_count_[sq_events_.back().first];
    sq_events_.pop_back();
  }
}

namespace {

constexpr std::uint64_t kPollInterval = 1 << 15;

struct CheckpointState {
  std::string word;
  std::uint64_t nodes = 0;
  std::size_t best_len = 0;
  std::string best_word;
};

void write_checkpoint(const std::string& path, const CheckpointState& st) {
  if (path.empty()) return;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << st.word << ' ' << st.nodes << ' ' << st.best_len << ' ' << st.best_word << '\n';
  }
  std::rename(tmp.c_str(), path.c_str());
}

std::optional<CheckpointState> read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  CheckpointState st;
  if (!(in >> st.word >> st.nodes >> st.best_len >> st.best_word)) return std::nullopt;
  return st;
}

std::vector<Symbol> digits_to_syms(const std::string& s, int k) {
  std::vector<Symbol> out;
  out.reserve(s.size());
  for (char c : s) {
    if (c < '0' || c >= '0' + k) fail(Errc::parse, "checkpoint word incompatible with alphabet");
    out.push_back(static_cast<Symbol>(c - '0'));
  }
  return out;
}

std::string syms_to_digits(const std::vector<Symbol>& s) {
  std::string out;
  out.reserve(s.size());
  for (Symbol c : s) out.push_back(static_cast<char>('0' + c));
  return out;
}

struct EngineResult {
  std::size_t best_len = 0;
  std::vector<Symbol> best_word;
  std::uint64_t nodes = 0;
  bool cap_hit = false;
  bool stopped = false;
  std::vector<Symbol> stop_word;  // pre-order position at the stop, for resume
};

// Sequential lexicographic DFS below a fixed base prefix. Counts one node per
// accepted word strictly deeper than the base.
class Engine {
 public:
  Engine(const SearchConfig& cfg, const std::atomic<bool>* stop,
         const std::atomic<std::size_t>* cancel_above, std::size_t my_index,
         std::atomic<std::uint64_t>* global_nodes)
      : cfg_(cfg), checker_(cfg), stop_(stop), cancel_above_(cancel_above), index_(my_index),
        global_nodes_(global_nodes) {}

  EngineResult run(const std::vector<Symbol>& base, const std::vector<Symbol>& resume_word,
                   const std::string& ckpt_path, const CheckpointState& carry) {
    const int k = cfg_.alphabet_size;
    const std::size_t maxlen = cfg_.max_length;
    std::vector<int> child(maxlen + 2, 0);

    std::vector<int> used(maxlen + 2, 0);
    const std::vector<Symbol>& start = resume_word.empty() ? base : resume_word;
    for (std::size_t d = 0; d < start.size(); ++d) {
      if (!checker_.try_push(start[d]))
        fail(Errc::argument, "start word violates the search constraints");
      child[d] = start[d] + 1;
      used[d + 1] = std::max(used[d], start[d] + 1);
    }
    std::size_t n = start.size();
    child[n] = 0;
    const std::size_t floor_depth = base.size();

    EngineResult res;
    std::uint64_t since_poll = 0, reported = 0;
    auto last_ckpt = std::chrono::steady_clock::now();

    while (true) {
      if (n == maxlen) {
        res.cap_hit = true;
        break;
      }
      // symmetry: letters must debut in increasing order, so the next new
      // letter is the only unused one worth trying
      const int limit = cfg_.symmetry_reduction ? std::min(k, used[n] + 1) : k;
      const int c = child[n];
      if (c >= limit) {
        if (n == floor_depth) break;
        checker_.pop();
        --n;
        continue;
      }
      child[n] = c + 1;
      if (!checker_.try_push(static_cast<Symbol>(c))) continue;
      used[n + 1] = std::max(used[n], c + 1);
      ++n;
      child[n] = 0;
      ++res.nodes;
      if (n > res.best_len) {
        res.best_len = n;
        res.best_word.assign(checker_.word().begin(), checker_.word().begin() + n);
      }
      // Stops and checkpoints act only right after a push, when the stack
      // word is the exact pre-order frontier, so a resume recounts nothing.
      if (++since_poll >= kPollInterval) {
        since_poll = 0;
        if (global_nodes_) {
          global_nodes_->fetch_add(res.nodes - reported, std::memory_order_relaxed);
          reported = res.nodes;
        }
        if (stop_ && stop_->load(std::memory_order_relaxed)) {
          res.stopped = true;
          res.stop_word.assign(checker_.word().begin(), checker_.word().begin() + n);
          break;
        }
        if (cancel_above_ && cancel_above_->load(std::memory_order_relaxed) < index_) {
          res.stopped = true;
          break;
        }
        if (!ckpt_path.empty()) {
          const auto now = std::chrono::steady_clock::now();
          if (now - last_ckpt > std::chrono::seconds(5)) {
            last_ckpt = now;
            CheckpointState st;
            st.word = syms_to_digits({checker_.word().begin(), checker_.word().begin() + n});
            st.nodes = carry.nodes + res.nodes;
            st.best_len = std::max(carry.best_len, res.best_len);
            st.best_word = res.best_len >= carry.best_len ? syms_to_digits(res.best_word)
                                                          : carry.best_word;
            write_checkpoint(ckpt_path, st);
          }
        }
      }
    }
    if (global_nodes_) global_nodes_->fetch_add(res.nodes - reported, std::memory_order_relaxed);
    return res;
  }

 private:
  SearchConfig cfg_;
  IncrementalChecker checker_;
  const std::atomic<bool>* stop_;
  const std::atomic<std::size_t>* cancel_above_;
  std::size_t index_;
  std::atomic<std::uint64_t>* global_nodes_;
};

struct RootEnumeration {
  std::vector<std::vector<Symbol>> roots;  // valid words of exactly the split depth, lex order
  std::uint64_t nodes = 0;
  std::size_t best_len = 0;
  std::vector<Symbol> best_word;
};

RootEnumeration enumerate_roots(const SearchConfig& cfg, std::size_t depth) {
  RootEnumeration out;
  IncrementalChecker checker(cfg);
  std::vector<int> child(depth + 2, 0);
  std::vector<int> used(depth + 2, 0);
  std::size_t n = 0;
  const int k = cfg.alphabet_size;
  while (true) {
    if (n == depth) {
      out.roots.emplace_back(checker.word().begin(), checker.word().begin() + n);
      checker.pop();
      --n;
      continue;
    }
    const int limit = cfg.symmetry_reduction ? std::min(k, used[n] + 1) : k;
    const int c = child[n];
    if (c >= limit) {
      if (n == 0) break;
      checker.pop();
      --n;
      continue;
    }
    child[n] = c + 1;
    if (checker.try_push(static_cast<Symbol>(c))) {
      used[n + 1] = std::max(used[n], c + 1);
      ++n;
      child[n] = 0;
      ++out.nodes;
      if (n > out.best_len) {
        out.best_len = n;
        out.best_word.assign(checker.word().begin(), checker.word().begin() + n);
      }
    }
  }
  return out;
}

void revalidate(const SearchConfig& cfg, const std::vector<Symbol>& syms) {
  if (syms.empty()) return;
  SymSpan s(syms);
  bool ok = cfg.circular ? is_circularly_power_free(s, cfg.threshold)
                         : is_power_free(s, cfg.threshold);
  if (ok && cfg.square_bound) {
    for (std::size_t p = 1; ok && 2 * p < *cfg.square_bound && 2 * p <= syms.size(); ++p)
      for (std::size_t i = 0; ok && i + 2 * p <= syms.size(); ++i)
        if (std::equal(syms.begin() + i, syms.begin() + i + p, syms.begin() + i + p)) ok = false;
  }
  if (!ok) fail(Errc::argument, "internal error: search witness failed independent re-check");
}

}  // namespace

SearchResult longest_word(const SearchConfig& cfg, const std::string& checkpoint_path, bool resume,
                          const ProgressFn& progress) {
  const auto t0 = std::chrono::steady_clock::now();
  SearchResult result;

  CheckpointState carry;
  std::vector<Symbol> resume_word;
  if (resume) {
    if (checkpoint_path.empty())
      fail(Errc::argument, "resume requested without a checkpoint file");
    auto st = read_checkpoint(checkpoint_path);
    if (!st) fail(Errc::io, "cannot read checkpoint file: " + checkpoint_path);
    resume_word = digits_to_syms(st->word, cfg.alphabet_size);
    carry = *st;
  }

  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> global_nodes{carry.nodes};

  std::size_t best_len = carry.best_len;
  std::vector<Symbol> best_word =
      carry.best_word.empty() ? std::vector<Symbol>{}
                              : digits_to_syms(carry.best_word, cfg.alphabet_size);
  std::uint64_t nodes = carry.nodes;
  bool cap_hit = false, stopped = false;

  std::thread progress_thread;
  std::atomic<bool> progress_done{false};
  if (progress) {
    progress_thread = std::thread([&] {
      while (!progress_done.load(std::memory_order_relaxed)) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
        if (progress(global_nodes.load(std::memory_order_relaxed), 0))
          stop.store(true, std::memory_order_relaxed);
      }
    });
  }

  const bool parallel =
      cfg.threads > 1 && cfg.max_length > cfg.split_depth + 1 && resume_word.empty();

  if (!parallel) {
    Engine engine(cfg, &stop, nullptr, 0, &global_nodes);
    EngineResult er = engine.run({}, resume_word, checkpoint_path, carry);
    nodes = carry.nodes + er.nodes;
    if (er.best_len > best_len) {
      best_len = er.best_len;
      best_word = er.best_word;
    }
    cap_hit = er.cap_hit;
    stopped = er.stopped;
    if (stopped && !checkpoint_path.empty() && !er.stop_word.empty()) {
      CheckpointState st;
      st.word = syms_to_digits(er.stop_word);
      st.nodes = nodes;
      st.best_len = best_len;
      st.best_word = syms_to_digits(best_word);
      write_checkpoint(checkpoint_path, st);
    }
    if (!stopped && !checkpoint_path.empty()) std::remove(checkpoint_path.c_str());
  } else {
    RootEnumeration en = enumerate_roots(cfg, cfg.split_depth);
    nodes = en.nodes;
    best_len = en.best_len;
    best_word = en.best_word;

    const std::size_t nroots = en.roots.size();
    std::vector<EngineResult> results(nroots);
    std::vector<char> done(nroots, 0);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> cancel_above{nroots};
    std::mutex mtx;

    auto worker = [&] {
      while (true) {
        const std::size_t idx = next.fetch_add(1);
        if (idx >= nroots) return;
        if (idx > cancel_above.load(std::memory_order_relaxed)) continue;
        Engine engine(cfg, &stop, &cancel_above, idx, &global_nodes);
        EngineResult er = engine.run(en.roots[idx], {}, {}, {});
        std::lock_guard<std::mutex> lk(mtx);
        const bool hit = er.cap_hit;
        results[idx] = std::move(er);
        done[idx] = 1;
        if (hit) {
          std::size_t cur = cancel_above.load();
          while (idx < cur && !cancel_above.compare_exchange_weak(cur, idx)) {
          }
        }
      }
    };
    std::vector<std::thread> pool;
    const int nt = std::max(1, cfg.threads);
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::size_t winner = nroots;
    for (std::size_t idx = 0; idx < nroots; ++idx)
      if (done[idx] && results[idx].cap_hit) {
        winner = idx;
        break;
      }
    if (winner < nroots) {
      cap_hit = true;
      nodes = en.nodes + results[winner].nodes;
      for (std::size_t idx = 0; idx < winner; ++idx) nodes += results[idx].nodes;
      best_len = cfg.max_length;
      best_word = results[winner].best_word;
    } else {
      for (std::size_t idx = 0; idx < nroots; ++idx) {
        if (!done[idx]) {
          stopped = true;
          continue;
        }
        nodes += results[idx].nodes;
        if (results[idx].stopped) stopped = true;
        if (results[idx].best_len > best_len) {
          best_len = results[idx].best_len;
          best_word = results[idx].best_word;
        }
      }
    }
  }

  progress_done.store(true);
  if (progress_thread.joinable()) progress_thread.join();

  result.longest_length = best_len;
  result.witness = Word(best_word, cfg.alphabet_size);
  result.exhausted = !cap_hit && !stopped;
  result.nodes_visited = nodes;
  result.stopped = stopped;
  result.wall_time_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count());
  if (result.exhausted || cap_hit) revalidate(cfg, best_word);
  return result;
}

namespace {

ProductExponent product_exponent_pool(const std::vector<std::string>& pool, unsigned parts,
                                      std::size_t cap) {
  if (parts < 1) fail(Errc::argument, "need at least one factor in a product");
  if (cap < parts) fail(Errc::argument, "max_total_len below the number of factors");
  double est = 1;
  for (unsigned i = 0; i < parts; ++i) est *= static_cast<double>(std::max<std::size_t>(pool.size(), 1));
  if (est > 5e8) fail(Errc::bound, "product enumeration too large; lower i or max_total_len");

  Rational best = Rational::integer(0);
  std::vector<std::string> best_parts;
  std::vector<Symbol> concat;
  std::vector<const std::string*> chosen;

  std::function<void(unsigned)> rec = [&](unsigned remaining) {
    if (remaining == 0) {
      const Rational e = exponent(SymSpan(concat));
      if (best < e) {
        best = e;
        best_parts.clear();
        for (auto* p : chosen) best_parts.push_back(*p);
      }
      return;
    }
    for (const auto& f : pool) {
      if (concat.size() + f.size() + (remaining - 1) > cap) continue;
      chosen.push_back(&f);
      for (char ch : f) concat.push_back(static_cast<Symbol>(ch));
      rec(remaining - 1);
      concat.resize(concat.size() - f.size());
      chosen.pop_back();
    }
  };
  rec(parts);

  ProductExponent out;
  out.value = best;
  std::string prod;
  for (const auto& f : best_parts) {
    std::string rendered;
    for (char ch : f) rendered.push_back(static_cast<char>('0' + ch));
    out.parts.push_back(rendered);
    prod += rendered;
  }
  out.product = prod;
  return out;
}

}  // namespace

ProductExponent product_exponent(const Word& w, unsigned parts, std::size_t max_total_len) {
  if (w.empty()) fail(Errc::empty_word, "product exponent of empty word");
  std::set<std::string> pool_set;
  const std::size_t longest = max_total_len - (parts - 1);
  for (std::size_t len = 1; len <= std::min(longest, w.size()); ++len)
    for (std::size_t i = 0; i + len <= w.size(); ++i)
      pool_set.insert(key_of(w.span().subspan(i, len)));
  std::vector<std::string> pool(pool_set.begin(), pool_set.end());
  auto out = product_exponent_pool(pool, parts, max_total_len);
  for (auto& part : out.parts) {
    std::string fixed;
    for (char c : part) fixed.push_back(w.glyph(static_cast<Symbol>(c - '0')));
    part = fixed;
  }
  std::string fixed;
  for (char c : out.product) fixed.push_back(w.glyph(static_cast<Symbol>(c - '0')));
  out.product = fixed;
  return out;
}

ProductExponent product_exponent_morphic(const UniformMorphism& h, Symbol seed, unsigned parts,
                                         std::size_t max_total_len) {
  if (max_total_len < parts) fail(Errc::argument, "max_total_len below the number of factors");
  const std::size_t longest = max_total_len - (parts - 1);
  FactorSet full = factor_set(h, seed, longest);
  std::set<std::string> pool_set(full.members.begin(), full.members.end());
  for (std::size_t len = 1; len < longest; ++len) {
    auto shorter = truncate_factor_set(full, len);
    pool_set.insert(shorter.begin(), shorter.end());
  }
  std::vector<std::string> pool(pool_set.begin(), pool_set.end());
  return product_exponent_pool(pool, parts, max_total_len);
}

std::vector<EvidenceRow> threshold_evidence(int k, const PowerThreshold& th,
                                            const std::vector<std::uint32_t>& schedule,
                                            std::size_t max_length) {
  std::vector<EvidenceRow> rows;
  for (std::uint32_t c : schedule) {
    SearchConfig cfg;
    cfg.alphabet_size = k;
    cfg.threshold = th;
    cfg.circular = true;
    if (c > 0) cfg.square_bound = c;
    cfg.max_length = max_length;
    rows.push_back({c, longest_word(cfg)});
  }
  return rows;
}

Rational repetition_threshold(int k) {
  if (k < 2) fail(Errc::argument, "repetition threshold needs k >= 2");
  if (k == 2) return Rational::integer(2);
  if (k == 3) return Rational(7, 4);
  if (k == 4) return Rational(7, 5);
  return Rational(k, k - 1);
}

Rational circular_repetition_threshold(int k) {
  if (k < 2) fail(Errc::argument, "circular repetition threshold needs k >= 2");
  if (k == 2) return Rational::integer(4);
  if (k == 3) return Rational(13, 4);
  if (k == 4) return Rational(5, 2);
  if (k == 5) return Rational(105, 46);
  return Rational(2 * k - 1, k - 1);
}

}  // namespace circw
