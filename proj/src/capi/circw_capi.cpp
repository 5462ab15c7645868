#include "circw.h"

#include <cstring>
#include <string>

#include "core/circular.hpp"
#include "core/errors.hpp"
#include "core/factorset.hpp"
#include "core/morphism.hpp"
#include "core/periodicity.hpp"
#include "core/search.hpp"
#include "core/verify.hpp"
#include "json.hpp"

using nlohmann::json;

struct cw_word {
  circw::Word w;
};
struct cw_morphism {
  circw::UniformMorphism m;
};

namespace {

thread_local std::string g_last_error;

cw_status status_of(circw::Errc c) {
  switch (c) {
    case circw::Errc::argument: return CW_ERR_ARGUMENT;
    case circw::Errc::parse: return CW_ERR_PARSE;
    case circw::Errc::empty_word: return CW_ERR_EMPTY_WORD;
    case circw::Errc::alphabet: return CW_ERR_ALPHABET;
    case circw::Errc::precondition: return CW_ERR_PRECONDITION;
    case circw::Errc::bound: return CW_ERR_BOUND;
    case circw::Errc::io: return CW_ERR_IO;
  }
  return CW_ERR_INTERNAL;
}

template <typename Fn>
cw_status guarded(Fn&& fn) {
  try {
    fn();
    return CW_OK;
  } catch (const circw::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CW_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cw_status require(bool cond, const char* msg) {
  if (cond) return CW_OK;
  g_last_error = msg;
  return CW_ERR_ARGUMENT;
}

json witness_json(const circw::RepetitionWitness& v, const circw::Word& w) {
  json j{{"period", v.period},
         {"length", v.length()},
         {"exponent", v.exponent().str()},
         {"string", w.render_span(circw::SymSpan(v.repetition(w.span())))}};
  if (v.is_circular()) {
    j["kind"] = "circular";
    j["t"] = {v.t_begin, v.t_end};
    j["u"] = {v.t_end, v.u_end};
    j["v"] = {v.u_end, v.v_end};
    j["t_string"] = w.render(v.t_begin, v.t_end);
    j["u_string"] = w.render(v.t_end, v.u_end);
    j["v_string"] = w.render(v.u_end, v.v_end);
  } else {
    j["kind"] = "factor";
    j["start"] = v.u_end;
    j["end"] = v.v_end;
  }
  return j;
}

json morphism_info_json(const circw::UniformMorphism& m) {
  json images = json::array();
  for (circw::Symbol a = 0; a < m.source_alphabet(); ++a) {
    std::string s;
    for (circw::Symbol x : m.image(a)) s.push_back(static_cast<char>('0' + x));
    images.push_back(s);
  }
  return json{{"name", m.name()},
              {"source_alphabet", m.source_alphabet()},
              {"target_alphabet", m.target_alphabet()},
              {"q", m.arity()},
              {"images", images}};
}

std::string render_key_digits(const std::string& key) {
  std::string out;
  for (char c : key) out.push_back(static_cast<char>('0' + c));
  return out;
}

json factor_set_json(const circw::FactorSet& fs) {
  json members = json::array();
  for (const auto& m : fs.members) members.push_back(render_key_digits(m));
  return json{{"length", fs.length},
              {"count", fs.members.size()},
              {"members", members},
              {"provenance",
               {{"source", fs.source},
                {"seed", fs.seed},
                {"iterations", fs.iterations},
                {"witness_prefix_length", fs.witness_prefix_len}}}};
}

}  // namespace

extern "C" {

const char* cw_version(void) { return "0.1.0"; }

const char* cw_status_str(cw_status s) {
  switch (s) {
    case CW_OK: return "ok";
    case CW_ERR_ARGUMENT: return "invalid argument";
    case CW_ERR_PARSE: return "parse error";
    case CW_ERR_EMPTY_WORD: return "empty word";
    case CW_ERR_ALPHABET: return "symbol outside alphabet";
    case CW_ERR_PRECONDITION: return "precondition violated";
    case CW_ERR_BOUND: return "brute-force bound exceeded";
    case CW_ERR_IO: return "i/o error";
    case CW_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* cw_last_error(void) { return g_last_error.c_str(); }

void cw_string_free(char* s) { std::free(s); }

cw_status cw_word_parse(const char* text, cw_word** out) {
  if (auto st = require(text && out, "null argument")) return st;
  return guarded([&] { *out = new cw_word{circw::Word::parse(text)}; });
}

void cw_word_free(cw_word* w) { delete w; }

cw_status cw_word_render(const cw_word* w, char** out) {
  if (auto st = require(w && out, "null argument")) return st;
  return guarded([&] { *out = dup_string(w->w.render()); });
}

size_t cw_word_length(const cw_word* w) { return w ? w->w.size() : 0; }

int cw_word_alphabet_size(const cw_word* w) { return w ? w->w.alphabet_size() : 0; }

cw_status cw_shortest_period(const cw_word* w, size_t* period) {
  if (auto st = require(w && period, "null argument")) return st;
  return guarded([&] { *period = circw::shortest_period(w->w.span()); });
}

cw_status cw_exponent(const cw_word* w, long long* num, long long* den) {
  if (auto st = require(w && num && den, "null argument")) return st;
  return guarded([&] {
    circw::Rational e = circw::exponent(w->w.span());
    *num = e.num();
    *den = e.den();
  });
}

cw_status cw_critical_exponent(const cw_word* w, int circular, char** json_out) {
  if (auto st = require(w && json_out, "null argument")) return st;
  return guarded([&] {
    json j;
    if (circular) {
      auto r = circw::circular_critical_exponent(w->w.span());
      j = {{"exponent", r.value.str()}, {"witness", witness_json(r.witness, w->w)}};
    } else {
      auto r = circw::critical_exponent(w->w.span());
      j = {{"exponent", r.value.str()}, {"witness", witness_json(r.witness, w->w)}};
    }
    *json_out = dup_string(j.dump());
  });
}

cw_status cw_power_free(const cw_word* w, long long alpha_num, long long alpha_den, int strict,
                        int circular, int* verdict, char** json_out) {
  if (auto st = require(w && verdict, "null argument")) return st;
  return guarded([&] {
    circw::PowerThreshold th(circw::Rational(alpha_num, alpha_den), strict != 0);
    std::optional<circw::RepetitionWitness> v =
        circular ? circw::find_circular_violation(w->w.span(), th)
                 : circw::find_power_violation(w->w.span(), th);
    *verdict = v ? 0 : 1;
    if (json_out) {
      json j{{"pass", !v}, {"alpha", th.value.str()}, {"strict", th.strict},
             {"circular", circular != 0}};
      if (v) j["witness"] = witness_json(*v, w->w);
      *json_out = dup_string(j.dump());
    }
  });
}

cw_status cw_conjugates(const cw_word* w, char** json_out) {
  if (auto st = require(w && json_out, "null argument")) return st;
  return guarded([&] {
    json arr = json::array();
    for (const auto& r : circw::conjugates(w->w)) arr.push_back(r.render());
    *json_out = dup_string(arr.dump());
  });
}

cw_status cw_circular_factors(const cw_word* w, size_t max_len, char** json_out) {
  if (auto st = require(w && json_out, "null argument")) return st;
  return guarded([&] {
    auto set = circw::circular_factors(w->w.span(), max_len);
    std::vector<std::string> rendered;
    rendered.reserve(set.size());
    for (const auto& key : set) {
      std::vector<circw::Symbol> tmp(key.begin(), key.end());
      rendered.push_back(w->w.render_span(circw::SymSpan(tmp)));
    }
    std::sort(rendered.begin(), rendered.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    *json_out = dup_string(json(rendered).dump());
  });
}

cw_status cw_conjugate_characterization(const cw_word* w, size_t bound, int* holds) {
  if (auto st = require(w && holds, "null argument")) return st;
  return guarded([&] {
    *holds = circw::verify_conjugate_characterization(w->w.span(), bound ? bound : 12) ? 1 : 0;
  });
}

cw_status cw_morphism_builtin(const char* name, cw_morphism** out) {
  if (auto st = require(name && out, "null argument")) return st;
  return guarded([&] {
    auto m = circw::UniformMorphism::builtin(name);
    if (!m) circw::fail(circw::Errc::argument, std::string("unknown builtin morphism: ") + name);
    *out = new cw_morphism{*m};
  });
}

cw_status cw_morphism_parse(const char* text, cw_morphism** out) {
  if (auto st = require(text && out, "null argument")) return st;
  return guarded([&] { *out = new cw_morphism{circw::UniformMorphism::parse(text)}; });
}

cw_status cw_morphism_load(const char* path, cw_morphism** out) {
  if (auto st = require(path && out, "null argument")) return st;
  return guarded([&] { *out = new cw_morphism{circw::UniformMorphism::load(path)}; });
}

void cw_morphism_free(cw_morphism* m) { delete m; }

cw_status cw_morphism_info(const cw_morphism* m, char** json_out) {
  if (auto st = require(m && json_out, "null argument")) return st;
  return guarded([&] { *json_out = dup_string(morphism_info_json(m->m).dump()); });
}

cw_status cw_morphism_apply(const cw_morphism* m, const cw_word* w, cw_word** out) {
  if (auto st = require(m && w && out, "null argument")) return st;
  return guarded([&] { *out = new cw_word{m->m.apply(w->w)}; });
}

cw_status cw_morphism_fixed_point(const cw_morphism* m, unsigned seed, size_t n, cw_word** out) {
  if (auto st = require(m && out, "null argument")) return st;
  return guarded([&] {
    *out = new cw_word{m->m.fixed_point_prefix(static_cast<circw::Symbol>(seed), n)};
  });
}

cw_status cw_morphism_check(const cw_morphism* m, char** json_out) {
  if (auto st = require(m && json_out, "null argument")) return st;
  return guarded([&] {
    json j = morphism_info_json(m->m);
    auto sync = m->m.synchronizing_counterexample();
    j["synchronizing"] = !sync;
    if (sync) {
      j["sync_counterexample"] = {{"a", sync->a}, {"b", sync->b}, {"c", sync->c},
                                  {"offset", sync->offset}};
      j["strongly_synchronizing"] = false;
    } else {
      auto ssm = m->m.strongly_synchronizing_counterexample();
      j["strongly_synchronizing"] = !ssm;
      if (ssm)
        j["ssm_counterexample"] = {{"a", ssm->a}, {"b", ssm->b}, {"c", ssm->c},
                                   {"split", ssm->split}};
    }
    *json_out = dup_string(j.dump());
  });
}

cw_status cw_factor_set(const cw_morphism* m, unsigned seed, size_t length, char** json_out) {
  if (auto st = require(m && json_out, "null argument")) return st;
  return guarded([&] {
    auto fs = circw::factor_set(m->m, static_cast<circw::Symbol>(seed), length);
    *json_out = dup_string(factor_set_json(fs).dump());
  });
}

cw_status cw_lift_power_freeness(const cw_morphism* m, unsigned seed, unsigned n,
                                 char** json_out) {
  if (auto st = require(m && json_out, "null argument")) return st;
  return guarded([&] {
    auto rep = circw::lift_power_freeness(m->m, static_cast<circw::Symbol>(seed), n);
    *json_out = dup_string(rep.to_json().dump());
  });
}

cw_status cw_power_alignment(const cw_morphism* m, const cw_word* w, unsigned n, int* holds) {
  if (auto st = require(m && w && holds, "null argument")) return st;
  return guarded([&] { *holds = circw::check_power_alignment(m->m, w->w, n) ? 1 : 0; });
}

cw_status cw_main_word_prefix(size_t n, cw_word** out) {
  if (auto st = require(out != nullptr, "null argument")) return st;
  return guarded([&] { *out = new cw_word{circw::main_word_prefix(n)}; });
}

cw_status cw_main_word_factor_set(size_t length, char** json_out) {
  if (auto st = require(json_out != nullptr, "null argument")) return st;
  return guarded([&] {
    auto fs = circw::image_factor_set(circw::UniformMorphism::mu(), circw::UniformMorphism::psi(),
                                      0, length);
    *json_out = dup_string(factor_set_json(fs).dump());
  });
}

cw_status cw_search(const char* config_json, const char* checkpoint_path, int resume,
                    cw_progress_fn progress, void* user, char** json_out) {
  if (auto st = require(config_json && json_out, "null argument")) return st;
  return guarded([&] {
    auto cfg = circw::SearchConfig::from_json(json::parse(config_json));
    circw::ProgressFn cb;
    if (progress)
      cb = [progress, user](std::uint64_t nodes, std::size_t) {
        return progress(nodes, user) != 0;
      };
    auto res = circw::longest_word(cfg, checkpoint_path ? checkpoint_path : "", resume != 0, cb);
    *json_out = dup_string(res.to_json(cfg).dump());
  });
}

cw_status cw_product_exponent(const cw_word* w, unsigned parts, size_t max_total_len,
                              char** json_out) {
  if (auto st = require(w && json_out, "null argument")) return st;
  return guarded([&] {
    auto pe = circw::product_exponent(w->w, parts, max_total_len);
    json j{{"exponent", pe.value.str()}, {"factors", pe.parts}, {"product", pe.product}};
    *json_out = dup_string(j.dump());
  });
}

cw_status cw_product_exponent_morphic(const cw_morphism* m, unsigned seed, unsigned parts,
                                      size_t max_total_len, char** json_out) {
  if (auto st = require(m && json_out, "null argument")) return st;
  return guarded([&] {
    auto pe = circw::product_exponent_morphic(m->m, static_cast<circw::Symbol>(seed), parts,
                                              max_total_len);
    json j{{"exponent", pe.value.str()}, {"factors", pe.parts}, {"product", pe.product}};
    *json_out = dup_string(j.dump());
  });
}

cw_status cw_verify(const char* claim_id, int skip_long, int threads, int* verdict,
                    char** json_out) {
  if (auto st = require(claim_id && verdict, "null argument")) return st;
  return guarded([&] {
    circw::VerifyOptions opt;
    opt.skip_long = skip_long != 0;
    opt.threads = threads > 0 ? threads : 1;
    std::vector<circw::ClaimReport> reports;
    if (std::string(claim_id) == "all") {
      reports = circw::verify_all(opt);
    } else {
      auto rep = circw::verify_claim(claim_id, opt);
      if (!rep) circw::fail(circw::Errc::argument, std::string("unknown claim: ") + claim_id);
      reports.push_back(*rep);
    }
    bool all_pass = true;
    json arr = json::array();
    for (const auto& r : reports) {
      all_pass = all_pass && r.pass;
      arr.push_back(r.to_json());
    }
    *verdict = all_pass ? 1 : 0;
    if (json_out) *json_out = dup_string(arr.dump());
  });
}

cw_status cw_claim_ids(char** json_out) {
  if (auto st = require(json_out != nullptr, "null argument")) return st;
  return guarded([&] { *json_out = dup_string(json(circw::claim_ids()).dump()); });
}

}  // extern "C"
