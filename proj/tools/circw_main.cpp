// circw: fractional repetition exponents, circular critical exponents,
// synchronizing morphisms, and exhaustive avoidance searches.
//
// Front end over the shared library's C API. Every subcommand maps to one
// library operation; --json switches the text rendering to the stable
// envelope {command, inputs, result, witnesses, stats}.

#include <atomic>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "circw.h"
#include "json.hpp"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::atomic<bool> g_interrupted{false};

void on_sigint(int) { g_interrupted.store(true); }

struct CString {
  char* p = nullptr;
  ~CString() { cw_string_free(p); }
  std::string str() const { return p ? p : ""; }
  json parse() const { return p ? json::parse(p) : json(); }
};

struct WordHandle {
  cw_word* w = nullptr;
  ~WordHandle() { cw_word_free(w); }
};

struct MorphismHandle {
  cw_morphism* m = nullptr;
  ~MorphismHandle() { cw_morphism_free(m); }
};

[[noreturn]] void die(cw_status st) {
  std::cerr << "error: " << cw_last_error() << " (" << cw_status_str(st) << ")\n";
  std::exit(kExitUsage);
}

void check(cw_status st) {
  if (st != CW_OK) die(st);
}

json envelope(const std::string& command, json inputs, json result, json witnesses, json stats) {
  return json{{"command", command},
              {"inputs", std::move(inputs)},
              {"result", std::move(result)},
              {"witnesses", std::move(witnesses)},
              {"stats", std::move(stats)}};
}

void emit(bool as_json, const json& env, const std::string& text) {
  if (as_json)
    std::cout << env.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

// Rational flags are parsed exactly; decimals are rejected.
std::pair<long long, long long> parse_alpha(const std::string& s) {
  auto bad = [&]() -> std::pair<long long, long long> {
    std::cerr << "error: malformed rational '" << s << "' (use forms like 13/4 or 2)\n";
    std::exit(kExitUsage);
  };
  long long num = 0, den = 1;
  auto slash = s.find('/');
  std::string a = s.substr(0, slash == std::string::npos ? s.size() : slash);
  if (a.empty() || a.find_first_not_of("0123456789") != std::string::npos) return bad();
  num = std::stoll(a);
  if (slash != std::string::npos) {
    std::string b = s.substr(slash + 1);
    if (b.empty() || b.find_first_not_of("0123456789") != std::string::npos) return bad();
    den = std::stoll(b);
    if (den == 0) return bad();
  }
  return {num, den};
}

// Words come from the argument, --file, or standard input (one per line).
std::vector<std::string> gather_words(const std::string& arg, const std::string& file) {
  std::vector<std::string> out;
  if (!arg.empty() && arg != "-") {
    out.push_back(arg);
    return out;
  }
  std::istream* in = &std::cin;
  std::ifstream f;
  if (!file.empty()) {
    f.open(file);
    if (!f) {
      std::cerr << "error: cannot read " << file << "\n";
      std::exit(kExitUsage);
    }
    in = &f;
  }
  std::string line;
  while (std::getline(*in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

MorphismHandle open_morphism(const std::string& name_or_file) {
  MorphismHandle h;
  if (cw_morphism_builtin(name_or_file.c_str(), &h.m) == CW_OK) return h;
  check(cw_morphism_load(name_or_file.c_str(), &h.m));
  return h;
}

int env_threads() {
  const char* t = std::getenv("CIRCW_THREADS");
  if (!t) return 1;
  int v = std::atoi(t);
  return v > 0 ? v : 1;
}

int progress_cb(unsigned long long nodes, void* user) {
  bool quiet = *static_cast<bool*>(user);
  if (!quiet) {
    static unsigned long long last = 0;
    if (nodes >= last + (1ull << 22)) {
      std::cerr << "\rnodes: " << nodes << std::flush;
      last = nodes;
    }
  }
  return g_interrupted.load() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact repetition exponents and circular avoidance searches"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit the JSON envelope instead of text");

  // exp WORD
  auto* c_exp = app.add_subcommand("exp", "exponent |w| / shortest period");
  std::string exp_word, exp_file;
  c_exp->add_option("word", exp_word, "word (digits or letters); '-' for stdin");
  c_exp->add_option("--file", exp_file, "read words from a file, one per line");

  // cexp WORD [--plain]
  auto* c_cexp = app.add_subcommand("cexp", "circular critical exponent with witness");
  std::string cexp_word, cexp_file;
  bool cexp_plain = false;
  c_cexp->add_option("word", cexp_word, "word; '-' for stdin");
  c_cexp->add_option("--file", cexp_file, "read words from a file");
  c_cexp->add_flag("--plain", cexp_plain, "ordinary critical exponent instead of circular");

  // check WORD --alpha P/Q [--strict] [--circular]
  auto* c_check = app.add_subcommand("check", "power-freeness verdict against a threshold");
  std::string check_word, check_file, check_alpha = "2";
  bool check_strict = false, check_circular = false;
  c_check->add_option("word", check_word, "word; '-' for stdin");
  c_check->add_option("--file", check_file, "read words from a file");
  c_check->add_option("--alpha", check_alpha, "threshold as an exact rational, e.g. 13/4");
  c_check->add_flag("--strict", check_strict, "forbid only exponents strictly above alpha");
  c_check->add_flag("--circular", check_circular, "check circular factors");

  // morphism check|apply|fixpoint NAME|FILE [WORD|N]
  auto* c_mor = app.add_subcommand("morphism", "uniform morphism operations");
  auto* m_check = c_mor->add_subcommand("check", "uniformity and synchronization report");
  std::string mc_name;
  m_check->add_option("name", mc_name, "builtin (mu, psi, thue-morse) or file")->required();
  auto* m_apply = c_mor->add_subcommand("apply", "apply the morphism to a word");
  std::string ma_name, ma_word;
  m_apply->add_option("name", ma_name)->required();
  m_apply->add_option("word", ma_word)->required();
  auto* m_fix = c_mor->add_subcommand("fixpoint", "prefix of the fixed point h^omega(seed)");
  std::string mf_name;
  std::size_t mf_n = 0;
  unsigned mf_seed = 0;
  m_fix->add_option("name", mf_name)->required();
  m_fix->add_option("n", mf_n, "prefix length")->required();
  m_fix->add_option("--seed", mf_seed, "seed symbol (default 0)");

  // factors NAME LEN
  auto* c_fac = app.add_subcommand("factors", "exact factor set of a fixed point");
  std::string fac_name;
  std::size_t fac_len = 0;
  unsigned fac_seed = 0;
  c_fac->add_option("name", fac_name, "builtin/file morphism, or mu-psi for mu(psi^omega(0))")
      ->required();
  c_fac->add_option("len", fac_len, "factor length")->required();
  c_fac->add_option("--seed", fac_seed, "seed symbol (default 0)");

  // search
  auto* c_search = app.add_subcommand("search", "longest word under the constraints");
  int s_k = 2;
  std::string s_alpha = "2";
  bool s_strict = false, s_circular = false, s_quiet = false;
  std::uint32_t s_squares = 0;
  std::size_t s_maxlen = 500, s_split = 6;
  std::string s_resume, s_checkpoint;
  c_search->add_option("--k", s_k, "alphabet size")->required();
  c_search->add_option("--alpha", s_alpha, "threshold as an exact rational")->required();
  c_search->add_flag("--strict", s_strict, "forbid only exponents strictly above alpha");
  c_search->add_flag("--circular", s_circular, "avoid circular repetitions");
  c_search->add_option("--avoid-squares", s_squares, "also forbid squares xx with |xx| < C");
  c_search->add_option("--max-len", s_maxlen, "length cap (search stops there)");
  c_search->add_option("--split-depth", s_split, "parallel split depth");
  c_search->add_option("--resume", s_resume, "resume from this checkpoint file");
  c_search->add_option("--checkpoint", s_checkpoint, "write checkpoints to this file");
  c_search->add_flag("--quiet", s_quiet, "no progress output");

  // pexp WORD --i I --max-len N
  auto* c_pexp = app.add_subcommand("pexp", "max exponent over products of i factors");
  std::string p_word;
  unsigned p_i = 2;
  std::size_t p_maxlen = 24;
  c_pexp->add_option("word", p_word, "word, or a builtin morphism name for its fixed point")
      ->required();
  c_pexp->add_option("--i", p_i, "number of factors");
  c_pexp->add_option("--max-len", p_maxlen, "total length cap");

  // verify [CLAIM|all] [--skip-long]
  auto* c_verify = app.add_subcommand("verify", "replicated computational claims");
  std::string v_claim = "all";
  bool v_skip_long = false, v_list = false;
  c_verify->add_option("claim", v_claim, "claim id or 'all'");
  c_verify->add_flag("--skip-long", v_skip_long, "skip the full exhaustive 147 search");
  c_verify->add_flag("--list", v_list, "list claim ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  std::signal(SIGINT, on_sigint);
  int exit_code = kExitPass;

  if (*c_exp) {
    for (const auto& text : gather_words(exp_word, exp_file)) {
      WordHandle w;
      check(cw_word_parse(text.c_str(), &w.w));
      long long num = 0, den = 1;
      check(cw_exponent(w.w, &num, &den));
      std::string val = den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
      emit(as_json,
           envelope("exp", {{"word", text}}, {{"exponent", val}}, json::array(), json::object()),
           val);
    }
  } else if (*c_cexp) {
    for (const auto& text : gather_words(cexp_word, cexp_file)) {
      WordHandle w;
      check(cw_word_parse(text.c_str(), &w.w));
      CString out;
      check(cw_critical_exponent(w.w, cexp_plain ? 0 : 1, &out.p));
      json r = out.parse();
      std::string line = r["exponent"].get<std::string>() + " witness=" +
                         r["witness"]["string"].get<std::string>();
      emit(as_json,
           envelope(cexp_plain ? "exp-critical" : "cexp", {{"word", text}}, r,
                    json::array({r["witness"]}), json::object()),
           line);
    }
  } else if (*c_check) {
    auto [num, den] = parse_alpha(check_alpha);
    for (const auto& text : gather_words(check_word, check_file)) {
      WordHandle w;
      check(cw_word_parse(text.c_str(), &w.w));
      int verdict = 0;
      CString out;
      check(cw_power_free(w.w, num, den, check_strict, check_circular, &verdict, &out.p));
      json r = out.parse();
      std::string line = verdict ? "pass" : "fail witness=" + r["witness"]["string"].get<std::string>();
      emit(as_json,
           envelope("check",
                    {{"word", text}, {"alpha", check_alpha}, {"strict", check_strict},
                     {"circular", check_circular}},
                    r, verdict ? json::array() : json::array({r["witness"]}), json::object()),
           line);
      if (!verdict) exit_code = kExitFail;
    }
  } else if (*m_check) {
    MorphismHandle m = open_morphism(mc_name);
    CString out;
    check(cw_morphism_check(m.m, &out.p));
    json r = out.parse();
    std::string line = "q=" + std::to_string(r["q"].get<int>()) +
                       " synchronizing=" + (r["synchronizing"].get<bool>() ? "yes" : "no") +
                       " strongly_synchronizing=" +
                       (r["strongly_synchronizing"].get<bool>() ? "yes" : "no");
    emit(as_json, envelope("morphism-check", {{"name", mc_name}}, r, json::array(), json::object()),
         line);
    if (!r["strongly_synchronizing"].get<bool>()) exit_code = kExitFail;
  } else if (*m_apply) {
    MorphismHandle m = open_morphism(ma_name);
    WordHandle w, out_w;
    check(cw_word_parse(ma_word.c_str(), &w.w));
    check(cw_morphism_apply(m.m, w.w, &out_w.w));
    CString out;
    check(cw_word_render(out_w.w, &out.p));
    emit(as_json,
         envelope("morphism-apply", {{"name", ma_name}, {"word", ma_word}},
                  {{"image", out.str()}}, json::array(), json::object()),
         out.str());
  } else if (*m_fix) {
    WordHandle out_w;
    if (mf_name == "mu-psi") {
      check(cw_main_word_prefix(mf_n, &out_w.w));
    } else {
      MorphismHandle m = open_morphism(mf_name);
      check(cw_morphism_fixed_point(m.m, mf_seed, mf_n, &out_w.w));
    }
    CString out;
    check(cw_word_render(out_w.w, &out.p));
    emit(as_json,
         envelope("morphism-fixpoint", {{"name", mf_name}, {"n", mf_n}, {"seed", mf_seed}},
                  {{"prefix", out.str()}}, json::array(), json::object()),
         out.str());
  } else if (*c_fac) {
    CString out;
    if (fac_name == "mu-psi") {
      check(cw_main_word_factor_set(fac_len, &out.p));
    } else {
      MorphismHandle m = open_morphism(fac_name);
      check(cw_factor_set(m.m, fac_seed, fac_len, &out.p));
    }
    json r = out.parse();
    std::string text = "count=" + std::to_string(r["count"].get<std::size_t>());
    for (const auto& mem : r["members"]) text += "\n" + mem.get<std::string>();
    emit(as_json,
         envelope("factors", {{"name", fac_name}, {"len", fac_len}, {"seed", fac_seed}}, r,
                  json::array(), json::object()),
         text);
  } else if (*c_search) {
    auto [num, den] = parse_alpha(s_alpha);
    json cfg{{"k", s_k},
             {"alpha", s_alpha},
             {"strict", s_strict},
             {"circular", s_circular},
             {"max_length", s_maxlen},
             {"threads", env_threads()},
             {"split_depth", s_split}};
    (void)num;
    (void)den;
    if (s_squares > 0) cfg["avoid_squares_below"] = s_squares;
    // --resume on a file that does not exist yet starts fresh and
    // checkpoints there, so long runs can use one flag throughout
    std::string ckpt = !s_checkpoint.empty() ? s_checkpoint : s_resume;
    bool do_resume = !s_resume.empty() && std::ifstream(s_resume).good();
    CString out;
    check(cw_search(cfg.dump().c_str(), ckpt.empty() ? nullptr : ckpt.c_str(),
                    do_resume ? 1 : 0, progress_cb, &s_quiet, &out.p));
    if (!s_quiet) std::cerr << "\n";
    json r = out.parse();
    std::string line = "longest=" + std::to_string(r["longest_length"].get<std::size_t>()) +
                       " exhausted=" + (r["exhausted"].get<bool>() ? "yes" : "no") +
                       " nodes=" + std::to_string(r["nodes_visited"].get<std::uint64_t>()) +
                       " witness=" + r["witness"].get<std::string>();
    if (r["stopped"].get<bool>()) line += " (stopped; checkpoint saved)";
    emit(as_json,
         envelope("search", cfg, r, json::array({r["witness"]}),
                  {{"nodes_visited", r["nodes_visited"]}, {"wall_time_ms", r["wall_time_ms"]}}),
         line);
  } else if (*c_pexp) {
    CString out;
    cw_morphism* builtin = nullptr;
    if (cw_morphism_builtin(p_word.c_str(), &builtin) == CW_OK) {
      MorphismHandle m{builtin};
      check(cw_product_exponent_morphic(m.m, 0, p_i, p_maxlen, &out.p));
    } else {
      WordHandle w;
      check(cw_word_parse(p_word.c_str(), &w.w));
      check(cw_product_exponent(w.w, p_i, p_maxlen, &out.p));
    }
    json r = out.parse();
    std::string line = r["exponent"].get<std::string>() + " product=" +
                       r["product"].get<std::string>();
    emit(as_json,
         envelope("pexp", {{"word", p_word}, {"i", p_i}, {"max_len", p_maxlen}}, r,
                  json::array({r["product"]}), json::object()),
         line);
  } else if (*c_verify) {
    if (v_list) {
      CString out;
      check(cw_claim_ids(&out.p));
      json ids = out.parse();
      if (as_json)
        std::cout << ids.dump(2) << "\n";
      else
        for (const auto& id : ids) std::cout << id.get<std::string>() << "\n";
      return kExitPass;
    }
    int verdict = 0;
    CString out;
    check(cw_verify(v_claim.c_str(), v_skip_long ? 1 : 0, env_threads(), &verdict, &out.p));
    json reports = out.parse();
    if (as_json) {
      std::cout << envelope("verify", {{"claim", v_claim}, {"skip_long", v_skip_long}}, reports,
                            json::array(), json::object())
                       .dump(2)
                << "\n";
    } else {
      for (const auto& r : reports) {
        std::cout << (r["verdict"] == "pass" ? "PASS " : "FAIL ") << r["claim"].get<std::string>()
                  << ": " << r["statement"].get<std::string>() << "\n";
      }
    }
    if (!verdict) exit_code = kExitFail;
  }

  return exit_code;
}
