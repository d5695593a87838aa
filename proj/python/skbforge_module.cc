// Python bindings for the skbforge core. Sememe sets cross the boundary as
// Python sets of str, tokens as dicts mirroring CoNLL-U columns.

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skbforge/consistency.h"
#include "skbforge/distill.h"
#include "skbforge/error.h"
#include "skbforge/ingestion.h"
#include "skbforge/normalizer.h"
#include "skbforge/sememe_set.h"
#include "skbforge/substitution.h"

namespace py = pybind11;
using namespace skbforge;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return in;
}

std::set<std::string> to_strings(const SememeSet& s) {
  std::set<std::string> out;
  for (const auto& l : s) out.insert(l.str());
  return out;
}

SememeSet to_sememes(const std::set<std::string>& s) {
  SememeSet out;
  for (const auto& w : s) out.insert(Lemma(w));
  return out;
}

SememeInventory to_inventory(const std::map<std::string, std::uint64_t>& counts) {
  SememeInventory inv;
  for (const auto& [s, c] : counts) inv.add(Lemma(s), c);
  return inv;
}

std::map<std::string, std::uint64_t> from_inventory(const SememeInventory& inv) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& [s, c] : inv.counts()) out[s.str()] = c;
  return out;
}

py::dict token_to_dict(const TokenAnnotation& t) {
  py::dict d;
  d["index"] = t.index;
  d["form"] = t.form;
  d["lemma"] = t.lemma.str();
  d["upos"] = t.upos;
  d["head"] = t.head ? py::object(py::int_(*t.head)) : py::none();
  d["deprel"] = t.deprel;
  return d;
}

std::vector<TokenAnnotation> tokens_from(const py::list& items) {
  std::vector<TokenAnnotation> out;
  for (const auto& item : items) {
    const auto d = item.cast<py::dict>();
    TokenAnnotation t;
    t.index = d["index"].cast<int>();
    t.lemma = Lemma(d["lemma"].cast<std::string>());
    t.form = d.contains("form") ? d["form"].cast<std::string>() : t.lemma.str();
    if (d.contains("upos")) t.upos = d["upos"].cast<std::string>();
    if (d.contains("head") && !d["head"].is_none()) t.head = d["head"].cast<int>();
    if (d.contains("deprel")) t.deprel = d["deprel"].cast<std::string>();
    out.push_back(std::move(t));
  }
  validate_tokens(out);
  return out;
}

ParseMap parses_from_file(const std::string& path) {
  auto in = open_input(path);
  return parse_conllu(in);
}

py::list diagnostics_list(const std::vector<Diagnostic>& diags) {
  py::list out;
  for (const auto& d : diags) out.append(py::make_tuple(d.sense_id, d.warning));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sememe knowledge base construction, distillation and evaluation";
  m.attr("__version__") = SKBFORGE_VERSION;

  static py::exception<Error> skb_error(m, "SkbError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = skb_error;
      py::object inst = exc(e.what());
      inst.attr("code") = std::string(error_code_name(e.code()));
      inst.attr("line") = e.line() ? py::object(py::int_(*e.line())) : py::none();
      PyErr_SetObject(exc.ptr(), inst.ptr());
    }
  });

  py::class_<Skb>(m, "Skb")
      .def(py::init([](const std::map<std::string, std::uint64_t>& inventory) {
             return Skb(to_inventory(inventory));
           }),
           py::arg("inventory"))
      .def_static("load", [](const std::string& path) {
        auto in = open_input(path);
        return read_skb(in);
      })
      .def_static("loads", [](const std::string& text) {
        std::istringstream in(text);
        return read_skb(in);
      })
      .def("dumps", [](const Skb& s) { return write_skb(s); })
      .def("save", [](const Skb& s, const std::string& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
        write_skb(s, out);
      })
      .def("insert",
           [](Skb& s, const std::string& headword, const std::string& sense_id,
              const std::set<std::string>& sememes, const std::string& pos) {
             s.insert({Lemma(headword), PosTag(pos), sense_id, to_sememes(sememes)});
           },
           py::arg("headword"), py::arg("sense_id"), py::arg("sememes"),
           py::arg("pos") = "")
      .def("__len__", &Skb::size)
      .def("sememes",
           [](const Skb& s, const std::string& sense_id) -> std::optional<std::set<std::string>> {
             const SkbRecord* r = s.find_sense(sense_id);
             if (!r) return std::nullopt;
             return to_strings(r->sememes);
           })
      .def("records",
           [](const Skb& s) {
             py::list out;
             for (const auto& r : s.records()) {
               py::dict d;
               d["headword"] = r.headword.str();
               d["pos"] = r.pos.known() ? py::object(py::str(r.pos.str())) : py::none();
               d["sense_id"] = r.sense_id;
               d["sememes"] = to_strings(r.sememes);
               out.append(d);
             }
             return out;
           })
      .def("headwords",
           [](const Skb& s) {
             std::vector<std::string> out;
             for (const auto& w : s.headwords()) out.push_back(w.str());
             return out;
           })
      .def("inventory", [](const Skb& s) { return from_inventory(s.inventory()); })
      .def("stats", [](const Skb& s) {
        const SkbStats st = compute_stats(s);
        py::dict d;
        d["words"] = st.word_count;
        d["senses"] = st.sense_count;
        d["sememes"] = st.sememe_count;
        d["avg_sememes_per_sense"] = st.avg_sememes_per_sense;
        return d;
      });

  m.def("read_conllu",
        [](const std::string& path) {
          py::dict out;
          for (const auto& [id, toks] : parses_from_file(path)) {
            py::list l;
            for (const auto& t : toks) l.append(token_to_dict(t));
            out[py::str(id)] = l;
          }
          return out;
        },
        py::arg("path"), "Parse a CoNLL-U sidecar into {sense_id: [token, ...]}.");

  m.def("normalize",
        [](const std::string& text) {
          py::list l;
          for (const auto& t : normalize_definition(text)) l.append(token_to_dict(t));
          return l;
        },
        py::arg("text"), "Tokenize and lemmatize a definition without parsing it.");

  m.def("build_sememe_set",
        [](const std::string& dict, const std::string& cdv, const std::string& stopwords,
           const std::string& negators, const std::string& conllu, double top_trim,
           double bottom_trim, int jobs) {
          auto din = open_input(dict);
          auto entries = parse_dictionary(din);
          if (!conllu.empty()) attach_parses(entries, parses_from_file(conllu));
          SememeSetConfig cfg;
          cfg.top_trim_fraction = top_trim;
          cfg.bottom_trim_fraction = bottom_trim;
          if (!stopwords.empty()) {
            auto in = open_input(stopwords);
            cfg.stopwords = parse_wordlist(in, WordListKind::kStopword);
          }
          if (!negators.empty()) {
            auto in = open_input(negators);
            cfg.negators = parse_wordlist(in, WordListKind::kNegator);
          }
          auto cin = open_input(cdv);
          const WordList words = parse_wordlist(cin, WordListKind::kCdv);
          std::set<Lemma> lexicon;
          for (const auto& e : entries) lexicon.insert(e.headword);
          const Normalizer norm(std::move(lexicon));
          return from_inventory(build_sememe_set(entries, words, cfg, &norm, jobs));
        },
        py::arg("dict"), py::arg("cdv"), py::arg("stopwords") = "",
        py::arg("negators") = "", py::arg("conllu") = "", py::arg("top_trim") = 0.01,
        py::arg("bottom_trim") = 0.10, py::arg("jobs") = 1,
        "Sememe inventory {sememe: count} from a dictionary and its defining vocabulary.");

  m.def("annotate",
        [](const std::string& dict, const std::map<std::string, std::uint64_t>& inventory,
           const std::string& conllu, int jobs) {
          auto din = open_input(dict);
          const auto entries = parse_dictionary(din);
          std::optional<ParseMap> parses;
          if (!conllu.empty()) parses = parses_from_file(conllu);
          std::set<Lemma> lexicon;
          for (const auto& e : entries) lexicon.insert(e.headword);
          const Normalizer norm(std::move(lexicon));
          SkbBuildResult r = build_skb(entries, to_inventory(inventory),
                                       parses ? &*parses : nullptr, &norm, jobs);
          return py::make_tuple(std::move(r.skb), diagnostics_list(r.diagnostics));
        },
        py::arg("dict"), py::arg("inventory"), py::arg("conllu") = "", py::arg("jobs") = 1,
        "Full SKB plus [(sense_id, warning)] for senses left out.");

  m.def("extract_sememes",
        [](const py::list& tokens, const std::map<std::string, std::uint64_t>& inventory) {
          return to_strings(extract_sense_sememes(tokens_from(tokens), to_inventory(inventory)));
        },
        py::arg("tokens"), py::arg("inventory"));

  m.def("importance_scores",
        [](const py::list& tokens, const std::set<std::string>& sememes) {
          std::map<std::string, int> out;
          for (const auto& [s, v] : importance_scores(tokens_from(tokens), to_sememes(sememes)))
            out[s.str()] = v;
          return out;
        },
        py::arg("tokens"), py::arg("sememes"));

  m.def("distill_sense",
        [](const std::set<std::string>& sememes, const std::map<std::string, int>& scores,
           int t, int m_min) {
          DistillConfig cfg{t, m_min};
          cfg.validate();
          ImportanceScores sc;
          for (const auto& [s, v] : scores) sc[Lemma(s)] = v;
          return to_strings(distill_sense(to_sememes(sememes), sc, cfg));
        },
        py::arg("sememes"), py::arg("scores"), py::arg("t") = 1, py::arg("m") = 4);

  m.def("distill",
        [](const Skb& skb, const std::string& conllu, int t, int m_min, int jobs) {
          DistillConfig cfg{t, m_min};
          SkbBuildResult r = distill_skb(skb, parses_from_file(conllu), cfg, jobs);
          return py::make_tuple(std::move(r.skb), diagnostics_list(r.diagnostics));
        },
        py::arg("skb"), py::arg("conllu"), py::arg("t") = 1, py::arg("m") = 4,
        py::arg("jobs") = 1);

  m.def("evaluate_consistency",
        [](const Skb& skb, const std::string& embeddings, double holdout, std::uint64_t seed,
           int k, double c, double f1_ratio, int jobs) {
          auto in = open_input(embeddings);
          const EmbeddingTable emb = parse_embeddings(in);
          EvalConfig cfg{holdout, seed, k, c, f1_ratio};
          const EvalReport rep = evaluate_consistency(skb, emb, cfg, jobs);
          py::dict d;
          d["map"] = rep.map_score;
          d["f1"] = rep.f1_score;
          d["evaluated"] = rep.per_sense.size();
          d["excluded"] = rep.excluded;
          d["json"] = rep.to_json();
          return d;
        },
        py::arg("skb"), py::arg("embeddings"), py::arg("holdout") = 0.10,
        py::arg("seed") = 0, py::arg("k") = 100, py::arg("c") = 0.8,
        py::arg("f1_ratio") = 0.5, py::arg("jobs") = 1);

  m.def("substitutes",
        [](const Skb& skb, const std::string& word, const std::string& pos, bool match_pos) {
          const SubstitutionIndex idx(skb, {.match_pos = match_pos});
          std::optional<PosTag> tag;
          if (!pos.empty()) tag = PosTag(pos);
          std::vector<std::string> out;
          for (const auto& w : idx.substitutes(Lemma(word), tag)) out.push_back(w.str());
          return out;
        },
        py::arg("skb"), py::arg("word"), py::arg("pos") = "", py::arg("match_pos") = true);

  m.def("substitute_stats",
        [](const Skb& skb, bool match_pos) {
          const SubstituteStats st = substitute_stats(SubstitutionIndex(skb, {.match_pos = match_pos}));
          py::dict d;
          d["mean"] = st.mean;
          d["words"] = st.word_count;
          py::dict hist;
          for (const auto& [label, n] : st.histogram) hist[py::str(label)] = n;
          d["histogram"] = hist;
          return d;
        },
        py::arg("skb"), py::arg("match_pos") = true);
}
