#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcoinv/bijections.hpp"
#include "qcoinv/pipelines.hpp"
#include "qcoinv/qpoly.hpp"
#include "qcoinv/verify.hpp"
#include "qcoinv/words.hpp"

namespace qcoinv::cli {

using nlohmann::json;

namespace detail {

inline Letter pick_top(const Word& w, int flag) {
  if (flag >= 0) return flag;
  if (w.empty())
    throw std::invalid_argument("empty word needs an explicit --n");
  return w.max_letter();
}

inline std::vector<long long> parse_ll_list(const std::string& s) {
  std::vector<long long> out;
  std::size_t pos = 0;
  while (pos <= s.size() && !s.empty()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    std::string tok = s.substr(pos, next - pos);
    std::size_t used = 0;
    out.push_back(std::stoll(tok, &used));
    if (used != tok.size())
      throw std::invalid_argument("bad integer list entry '" + tok + "'");
    pos = next + 1;
    if (next == s.size()) break;
  }
  return out;
}

struct PredSpec {
  std::optional<long long> p1;
  std::optional<long long> pn;
  std::optional<WordClass> cls;
};

inline PredSpec parse_pred(const std::string& s) {
  PredSpec out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    std::string tok = s.substr(pos, next - pos);
    std::size_t eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("bad predicate '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "p1") {
      out.p1 = std::stoll(val);
    } else if (key == "pn") {
      out.pn = std::stoll(val);
    } else if (key == "class") {
      if (val == "gt")
        out.cls = WordClass::greater;
      else if (val == "le")
        out.cls = WordClass::less_eq;
      else
        throw std::invalid_argument("class must be gt or le");
    } else {
      throw std::invalid_argument("unknown predicate key '" + key + "'");
    }
    pos = next + 1;
  }
  return out;
}

inline json trace_json(const pipe::TraceRecord& tr) {
  json steps = json::array();
  for (const auto& st : tr.steps)
    steps.push_back({{"label", st.label},
                     {"input", st.input},
                     {"output", st.output},
                     {"shift_delta", st.shift_delta}});
  return json{{"initial_weight", tr.initial_weight},
              {"final_weight", tr.final_weight},
              {"initial_shift", tr.initial_shift},
              {"steps", steps}};
}

}  // namespace detail

// Entry point shared by the binary and the tests. Exit status: 0 on
// success, 1 when a verification fails, 2 on usage errors.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"coinversion statistics, exact q-polynomials, and "
               "weight-preserving word bijections"};
  app.require_subcommand(1);

  std::string word_arg, pred_arg, freqs_arg, a_arg, identity_arg;
  int n_flag = -1;
  bool json_out = false, inverse = false;
  verify::Params params;
  long long qb_n = 0, qb_k = 0, qm_n = 0;
  std::string qm_parts;
  verify::SweepBounds bounds;

  auto* c_coinv = app.add_subcommand("coinv", "coinversion count of a word");
  c_coinv->add_option("word", word_arg)->required();

  auto* c_stats = app.add_subcommand("stats", "statistics of a word");
  c_stats->add_option("word", word_arg)->required();
  c_stats->add_option("--n", n_flag, "top letter (default: maximum present)");

  auto* c_qbin = app.add_subcommand("qbin", "Gaussian binomial coefficient");
  c_qbin->add_option("n", qb_n)->required();
  c_qbin->add_option("k", qb_k)->required();

  auto* c_qmulti =
      app.add_subcommand("qmulti", "Gaussian multinomial coefficient");
  c_qmulti->add_option("n", qm_n)->required();
  c_qmulti->add_option("parts", qm_parts, "comma-separated parts")->required();

  auto* c_enum =
      app.add_subcommand("enumerate", "list a rearrangement class and its "
                                      "coinversion generating function");
  c_enum->add_option("--freqs", freqs_arg, "letter counts a0,a1,...")
      ->required();
  c_enum->add_option("--pred", pred_arg, "p1=i,pn=j,class=gt|le filters");
  c_enum->add_option("--cap", params.cap, "enumeration cap");

  auto* c_verify = app.add_subcommand("verify", "check one identity");
  c_verify->add_option("--identity", identity_arg)->required();
  c_verify->add_option("--n", params.n);
  c_verify->add_option("--N", params.N);
  c_verify->add_option("--L", params.L);
  c_verify->add_option("--k", params.k);
  c_verify->add_option("--i", params.i);
  c_verify->add_option("--j", params.j);
  c_verify->add_option("--A", params.A);
  c_verify->add_option("--B", params.B);
  c_verify->add_option("--C", params.C);
  c_verify->add_option("--a", a_arg, "middle counts a2,a3,...");
  c_verify->add_option("--freqs", freqs_arg, "letter counts a0,a1,...");
  c_verify->add_option("--cap", params.cap);
  c_verify->add_flag("--json", json_out);

  auto* c_sweep =
      app.add_subcommand("sweep", "run every check within the bounds");
  c_sweep->add_option("--max-n", bounds.max_n, "alphabet bound")->required();
  c_sweep->add_option("--max-N", bounds.max_N, "word length bound")
      ->required();
  c_sweep->add_option("--max-len", bounds.max_len,
                      "word length bound for bijection checks");
  c_sweep->add_option("--max-a-sum", bounds.max_a_sum,
                      "middle letter budget for n >= 4");
  c_sweep->add_option("--cap", bounds.cap);
  c_sweep->add_flag("--json", json_out);

  auto* c_trace = app.add_subcommand(
      "trace", "trace the weight-shifting bijection step by step");
  c_trace->add_option("--word", word_arg)->required();
  c_trace->add_option("--n", n_flag, "top letter (default: maximum present)");
  c_trace->add_flag("--inverse", inverse);
  c_trace->add_flag("--json", json_out);

  try {
    std::vector<const char*> argv;
    argv.push_back("qcoinv");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (c_coinv->parsed()) {
      out << coinv(Word::parse(word_arg)) << "\n";
      return 0;
    }

    if (c_stats->parsed()) {
      Word w = Word::parse(word_arg);
      Letter n = detail::pick_top(w, n_flag);
      for (Letter l : w)
        if (l < 1 || l > n)
          throw std::invalid_argument("letter " + std::to_string(l) +
                                      " outside 1.." + std::to_string(n));
      long long k = w.count(n);
      long long L = k + w.count(1);
      out << "coinv: " << coinv(w) << "\n";
      out << "p_1: " << p_one(w, n).str() << "\n";
      out << "p_" << n << ": " << p_top(w, n).str() << "\n";
      out << "k: " << k << "\n";
      out << "L: " << L << "\n";
      out << "N: " << w.size() << "\n";
      out << "class: " << str(classify(w, n)) << "\n";
      return 0;
    }

    if (c_qbin->parsed()) {
      out << q_binomial(qb_n, qb_k).str() << "\n";
      return 0;
    }

    if (c_qmulti->parsed()) {
      out << q_multinomial(qm_n, detail::parse_ll_list(qm_parts)).str()
          << "\n";
      return 0;
    }

    if (c_enum->parsed()) {
      Freqs f = Freqs::parse(freqs_arg);
      detail::PredSpec spec;
      if (!pred_arg.empty()) spec = detail::parse_pred(pred_arg);
      Letter n = f.top_letter();
      auto pred = [&](const Word& w) {
        if (spec.p1 && p_one(w, n) != Position::at(*spec.p1)) return false;
        if (spec.pn && p_top(w, n) != Position::at(*spec.pn)) return false;
        if (spec.cls && classify(w, n) != *spec.cls) return false;
        return true;
      };
      std::vector<QPoly::Coeff> acc;
      for_each_word(
          f,
          [&](const Word& w) {
            if (!pred(w)) return;
            out << w.str() << "\n";
            auto c = static_cast<std::size_t>(coinv(w));
            if (acc.size() <= c) acc.resize(c + 1, 0);
            ++acc[c];
          },
          params.cap);
      out << "gf: " << QPoly(std::move(acc)).str() << "\n";
      return 0;
    }

    if (c_verify->parsed()) {
      auto id = verify::identity_from(identity_arg);
      if (!id) {
        err << "unknown identity '" << identity_arg << "'\n";
        return 2;
      }
      if (!a_arg.empty()) {
        for (long long v : detail::parse_ll_list(a_arg))
          params.a.push_back(static_cast<int>(v));
      }
      if (!freqs_arg.empty()) params.freqs = detail::parse_ll_list(freqs_arg);
      verify::Report r = verify::check_identity(*id, params);
      if (json_out)
        out << r.to_json().dump(2) << "\n";
      else
        out << r.line() << "\n"
            << "lhs: " << r.lhs.str() << "\n"
            << "rhs: " << r.rhs.str() << "\n";
      return r.pass ? 0 : 1;
    }

    if (c_sweep->parsed()) {
      std::vector<verify::Report> reports = verify::sweep(bounds);
      bool ok = verify::all_pass(reports);
      if (json_out) {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(r.to_json());
        json doc = {{"reports", arr},
                    {"total", reports.size()},
                    {"pass", ok}};
        out << doc.dump(2) << "\n";
      } else {
        std::size_t failed = 0;
        for (const auto& r : reports) {
          if (!r.pass) ++failed;
          out << r.line() << "\n";
        }
        out << (ok ? "all " : "FAILED ") << reports.size() << " checks"
            << (ok ? " passed" : (", " + std::to_string(failed) + " failed"))
            << "\n";
      }
      return ok ? 0 : 1;
    }

    if (c_trace->parsed()) {
      Word w = Word::parse(word_arg);
      Letter n = detail::pick_top(w, n_flag);
      pipe::TraceRecord tr;
      pipe::ShiftResult res = inverse ? pipe::shift_down_composed(w, n, &tr)
                                      : pipe::shift_up_composed(w, n, &tr);
      long long out_shift = inverse ? 0 : res.k;
      if (json_out) {
        json doc = detail::trace_json(tr);
        doc["word"] = w.str();
        doc["n"] = n;
        doc["k"] = res.k;
        doc["direction"] = inverse ? "inverse" : "forward";
        doc["output"] = res.word.str();
        doc["output_shift"] = out_shift;
        doc["output_coinv"] = coinv(res.word);
        out << doc.dump(2) << "\n";
      } else {
        out << "input: " << ShiftedWord{w, tr.initial_shift}.str()
            << "  (weight " << tr.initial_weight << ")\n";
        out << tr.str();
        out << "final: " << ShiftedWord{res.word, out_shift}.str()
            << "  (coinv " << coinv(res.word) << ", k = " << res.k << ")\n";
      }
      return 0;
    }
  } catch (const CapExceeded& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace qcoinv::cli
