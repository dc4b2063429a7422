#pragma once

// Deterministic synthetic appeal judgments with recorded ground truth.
//
// Each document follows the usual macrostructure: a header, the appellant
// block with its counsel, the appellee block with its counsel, the court
// composition, the debate and the "PAR CES MOTIFS" conclusion. Douai-style
// documents announce the parties with "APPELANT" / "INTIMEE", Agen-style ones
// with "ENTRE" / "ET".

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "courtnet/corpus.hpp"
#include "courtnet/error.hpp"
#include "courtnet/text.hpp"
#include "courtnet/types.hpp"

namespace courtnet {

struct TruthRecord {
  std::string doc_id;
  std::vector<std::string> appellant_lawyers;
  std::vector<std::string> appellee_lawyers;
  Outcome outcome = Outcome::Undetermined;
  std::size_t confirm_count = 0;
  std::size_t reverse_count = 0;
  std::set<ArticleRef> articles;
  std::vector<SegmentSpan> segments;
};

struct SyntheticGroundTruth {
  std::vector<TruthRecord> records;  // same order as the corpus
  std::string dominant_lawyer;       // display form of the planted undefeated lawyer

  /// AppelleeWins / (AppelleeWins + AppellantWins) over all documents.
  double planted_rejection_rate() const {
    std::size_t confirmed = 0, determined = 0;
    for (const auto& r : records) {
      if (r.outcome == Outcome::Undetermined) continue;
      ++determined;
      if (r.outcome == Outcome::AppelleeWins) ++confirmed;
    }
    return determined ? static_cast<double>(confirmed) / static_cast<double>(determined) : 0.0;
  }
};

struct SyntheticCorpus {
  std::vector<Document> documents;
  SyntheticGroundTruth truth;
};

/// Knobs of the generator beyond seed, size and jurisdiction mix.
struct SynthOptions {
  double appellee_win_probability = 0.9;
  double undetermined_probability = 0.05;
  double no_lawyer_probability = 0.03;
  double unrepresented_appellee_probability = 0.05;
  double dominant_probability = 0.08;
  double counsel_marker_probability = 0.5;  // Douai only
};

/// Thin deterministic wrapper over mt19937_64. Bounded draws avoid the
/// standard distributions so output is identical across standard libraries.
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return n <= 1 ? 0 : static_cast<std::size_t>(engine_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

namespace synth_detail {

inline const std::vector<std::string>& first_names() {
  static const std::vector<std::string> names = {
      "Jean",     "Pierre",    "Marie",   "Anne-Claire", "Hélène",  "François", "Jérôme",   "Élodie",
      "Céline",   "Benoît",    "Loïc",    "Gaëlle",      "Thérèse", "Marc-Antoine", "Sophie", "Isabelle",
      "Philippe", "Nathalie",  "Stéphane", "Aurélie",    "Olivier", "Valérie",  "Frédéric", "Sébastien",
      "Cécile",   "Laurent",   "Agnès",   "Rémi",        "Chloé",   "Noël"};
  return names;
}

inline const std::vector<std::string>& last_names() {
  static const std::vector<std::string> names = {
      "Dupont",  "Martin",   "Lefèvre",  "Durand",    "Moreau",  "Girard",   "Roux",     "Fournier",
      "Lambert", "Bonnet",   "Mercier",  "Faure",     "Rousseau", "Blanc",   "Guérin",   "Muller",
      "Henry",   "Chevalier", "Garnier", "Leclerc",   "Dubois",  "Perrin",   "Morel",    "Gauthier",
      "Fontaine", "Lemaire", "Barbier",  "Caron",     "Renaud",  "Picard",   "Aubert",   "de Montalembert",
      "du Plessis", "Le Goff", "de La Rochefoucauld", "Benaïssa", "Nguyen", "Lécuyer", "Saint-Just", "Vasseur"};
  return names;
}

inline const std::vector<std::string>& cities() {
  static const std::vector<std::string> names = {"Lille", "Douai", "Arras", "Valenciennes", "Cambrai",
                                                 "Agen",  "Auch",  "Cahors", "Montauban",  "Villeneuve-sur-Lot"};
  return names;
}

inline const std::vector<std::string>& companies() {
  static const std::vector<std::string> names = {
      "SARL LES JARDINS DU NORD",      "SAS IMMOBILIERE DU LITTORAL", "SA COMPAGNIE GENERALE DE TRANSPORTS",
      "SCI LES TILLEULS DE GARONNE",   "SARL BATIMENTS ET TRAVAUX DE L'ARTOIS",
      "SAS DISTRIBUTION ALIMENTAIRE DU SUD-OUEST", "SA BANQUE REGIONALE DE L'ESCAUT",
      "SARL TRANSPORTS ROUTIERS DE GASCOGNE"};
  return names;
}

struct CodeInfo {
  std::string display;
  std::string canonical;
};

inline const std::vector<CodeInfo>& codes() {
  static const std::vector<CodeInfo> c = {{"code de procédure civile", "code de procedure civile"},
                                          {"code civil", "code civil"},
                                          {"code du travail", "code du travail"},
                                          {"code de la consommation", "code de la consommation"}};
  return c;
}

struct PoolArticle {
  std::size_t code;
  std::string number;  // canonical form
};

// Citation pools per litigation topic.
inline const std::vector<std::vector<PoolArticle>>& topics() {
  static const std::vector<std::vector<PoolArticle>> t = {
      {{1, "1103"}, {1, "1104"}, {1, "1231-1"}, {1, "1134"}, {1, "1147"}, {1, "1217"}, {1, "1224"}},
      {{1, "1792"}, {1, "1641"}, {1, "2224"}, {1, "1792-4-1"}, {0, "564"}, {1, "1648"}},
      {{2, "L. 1234-5"}, {2, "L. 1235-3"}, {2, "L. 1152-1"}, {2, "L. 1232-1"}, {2, "R. 1455-6"}, {2, "L. 3171-4"}},
      {{3, "L. 312-16"}, {3, "L. 218-2"}, {3, "R. 632-1"}, {3, "L. 212-1"}, {1, "1343-5"}},
      {{0, "909"}, {0, "122"}, {0, "9"}, {0, "6"}, {0, "954"}, {0, "910"}}};
  return t;
}

// Renders "L. 1234-5" sometimes as "L.1234-5" to exercise normalization.
inline std::string render_number(SynthRng& rng, const std::string& canonical) {
  if (canonical.size() > 3 && canonical[1] == '.' && canonical[2] == ' ' && rng.chance(0.3)) {
    return canonical.substr(0, 2) + canonical.substr(3);
  }
  return canonical;
}

inline const std::vector<std::string>& debate_sentences() {
  static const std::vector<std::string> s = {
      "Le premier juge a retenu que les conditions de la responsabilité contractuelle étaient réunies.",
      "La partie appelante soutient que le tribunal a mal apprécié les éléments de preuve produits.",
      "La partie intimée fait valoir que les demandes adverses ne sont pas fondées.",
      "Il résulte des pièces versées aux débats que les travaux ont été réceptionnés sans réserve.",
      "Les parties ont été régulièrement convoquées à l'audience de plaidoiries.",
      "L'ordonnance de clôture a été rendue avant l'audience.",
      "Le montant de la créance n'est pas sérieusement contesté.",
      "La cour relève que le contrat liant les parties ne prévoyait aucune clause pénale.",
      "Une expertise judiciaire a été ordonnée par le juge de la mise en état.",
      "Les conclusions des parties ont été notifiées par voie électronique.",
      "Le salarié a saisi le conseil de prud'hommes d'une demande indemnitaire.",
      "Le prêteur a prononcé la déchéance du terme après plusieurs mises en demeure.",
  };
  return s;
}

inline const std::vector<std::string>& confirm_sentences() {
  static const std::vector<std::string> s = {
      "Confirme le jugement entrepris en toutes ses dispositions.", "Confirme l'ordonnance déférée.",
      "Déclare l'appel irrecevable.", "Dit que la demande reconventionnelle est rejetée.",
      "Déclare irrecevables les demandes nouvelles formées en cause d'appel."};
  return s;
}

inline const std::vector<std::string>& reverse_sentences() {
  static const std::vector<std::string> s = {
      "Infirme le jugement déféré.", "Infirme partiellement le jugement entrepris.",
      "Réforme le jugement en ses dispositions relatives aux dommages et intérêts.",
      "Statuant à nouveau et réformant la décision, dit que le contrat est résolu.",
      "Ordonne la rectification de l'acte litigieux."};
  return s;
}

inline const std::vector<std::string>& filler_sentences() {
  static const std::vector<std::string> s = {"Condamne la partie succombante aux dépens d'appel.",
                                             "Dit n'y avoir lieu à indemnité de procédure.",
                                             "Rappelle que la présente décision est exécutoire de plein droit.",
                                             "Déboute les parties du surplus de leurs prétentions."};
  return s;
}

// Appends lines while tracking segment boundaries.
class TextBuilder {
 public:
  TextBuilder() { spans_.push_back({"header", 0, 0}); }

  void line(const std::string& s) {
    text_ += s;
    text_ += '\n';
  }
  void blank() { text_ += '\n'; }
  void marker(const std::string& segment, const std::string& keyword_line) {
    spans_.back().end = text_.size();
    spans_.push_back({segment, text_.size(), 0});
    line(keyword_line);
  }
  std::pair<std::string, std::vector<SegmentSpan>> finish() {
    spans_.back().end = text_.size();
    std::erase_if(spans_, [](const SegmentSpan& s) { return s.end <= s.start; });
    return {std::move(text_), std::move(spans_)};
  }

 private:
  std::string text_;
  std::vector<SegmentSpan> spans_;
};

inline std::string two_digits(std::size_t v) { return (v < 10 ? "0" : "") + std::to_string(v); }

inline std::string random_date(SynthRng& rng) {
  return two_digits(rng.between(1, 28)) + "/" + two_digits(rng.between(1, 12)) + "/" +
         std::to_string(rng.between(2016, 2019));
}

struct Lawyer {
  std::string display;
  std::string canonical;
};

inline std::string render_lawyer(SynthRng& rng, const Lawyer& l) {
  // Sometimes the surname is printed in capitals; canonical form is unaffected.
  const auto space = l.display.find(' ');
  if (space == std::string::npos || !rng.chance(0.2)) return l.display;
  const std::string last = l.display.substr(space + 1);
  if (text::first_code_point(last) < 'A' || text::first_code_point(last) > 'Z') return l.display;
  std::string upper;
  for (char c : last) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  // Only ASCII surnames are upper-cased so the folded form stays identical.
  if (!std::all_of(last.begin(), last.end(), [](unsigned char c) { return c < 0x80; })) return l.display;
  return l.display.substr(0, space + 1) + upper;
}

struct Party {
  bool person = true;
  bool female = false;
  std::string name;
};

inline Party random_party(SynthRng& rng) {
  static const std::string kAnon = "XYZWVT";
  Party p;
  p.person = rng.chance(0.7);
  if (p.person) {
    p.female = rng.chance(0.5);
    p.name = std::string(p.female ? "Madame " : "Monsieur ") + rng.pick(first_names()) + " " +
             kAnon[rng.below(kAnon.size())] + ".";
  } else {
    p.female = true;
    p.name = rng.pick(companies());
  }
  return p;
}

inline std::string party_detail(SynthRng& rng, const Party& p) {
  const std::string& city = rng.pick(cities());
  if (!p.person) return "ayant son siège social " + std::to_string(rng.between(1, 90)) + " avenue de la Gare à " + city;
  if (rng.chance(0.5)) return std::string(p.female ? "née" : "né") + " le " + random_date(rng) + " à " + city;
  return "demeurant " + std::to_string(rng.between(1, 120)) + " rue des Lilas à " + city;
}

inline std::string join_names(SynthRng& rng, const std::vector<const Lawyer*>& lawyers, bool honorific) {
  std::string out;
  for (std::size_t k = 0; k < lawyers.size(); ++k) {
    if (k > 0) out += k + 1 == lawyers.size() ? " et " : ", ";
    if (honorific || k > 0) out += rng.chance(0.15) ? "Maître " : "Me ";
    out += render_lawyer(rng, *lawyers[k]);
  }
  return out;
}

// Inline counsel sentence following the party description.
inline std::string counsel_sentence(SynthRng& rng, const Party& p, const std::vector<const Lawyer*>& lawyers) {
  const std::string& city = rng.pick(cities());
  const std::string plural = lawyers.size() > 1 ? "s" : "";
  const std::string agree = p.female ? "e" : "";
  switch (rng.below(4)) {
    case 0:
      return "représenté" + agree + " par " + join_names(rng, lawyers, true) + ", avocat" + plural +
             " au barreau de " + city;
    case 1:
      return "assisté" + agree + " de " + join_names(rng, lawyers, true) + ", avocat" + plural + " plaidant" + plural;
    case 2:
      // No honorific on the first name: anchored on "représenté par" alone.
      return "représenté" + agree + " par " + join_names(rng, lawyers, false) + ", avocat" + plural +
             " au barreau de " + city;
    default:
      return "ayant pour avocat" + plural + " " + join_names(rng, lawyers, true) + ", du barreau de " + city;
  }
}

inline std::string unrepresented_sentence(const Party& p) {
  return p.female ? "non comparante ni représentée" : "non comparant ni représenté";
}

struct Citation {
  std::string sentence;
  std::vector<ArticleRef> refs;
};

inline std::vector<Citation> citations_for(SynthRng& rng) {
  const auto& pool = topics()[rng.below(topics().size())];
  std::vector<PoolArticle> chosen = pool;
  rng.shuffle(chosen);
  chosen.resize(rng.between(2, std::min<std::size_t>(5, pool.size())));
  if (rng.chance(0.6)) chosen.push_back({0, "700"});
  if (rng.chance(0.2)) {
    const auto& other = topics()[rng.below(topics().size())];
    chosen.push_back(rng.pick(other));
  }
  // Group by code, dropping duplicates.
  std::map<std::size_t, std::vector<std::string>> by_code;
  for (const auto& a : chosen) {
    auto& v = by_code[a.code];
    if (std::find(v.begin(), v.end(), a.number) == v.end()) v.push_back(a.number);
  }
  std::vector<Citation> out;
  for (const auto& [code, numbers] : by_code) {
    Citation c;
    const std::string& display = codes()[code].display;
    for (const auto& n : numbers) c.refs.push_back({codes()[code].canonical, n});
    if (numbers.size() == 1) {
      const std::string n = render_number(rng, numbers[0]);
      c.sentence = rng.chance(0.5) ? "Vu l'article " + n + " du " + display + "." :
                                     "La demande est fondée sur l'article " + n + " du " + display + ".";
    } else {
      std::string list;
      for (std::size_t k = 0; k < numbers.size(); ++k) {
        if (k > 0) list += k + 1 == numbers.size() ? " et " : ", ";
        list += render_number(rng, numbers[k]);
      }
      c.sentence = "Au visa des articles " + list + " du " + display + ", la cour examine les prétentions des parties.";
    }
    out.push_back(std::move(c));
  }
  if (rng.chance(0.1)) {
    const std::string n = std::to_string(rng.between(2, 40));
    out.push_back({"Les parties se réfèrent à l'article " + n + " de la convention collective applicable.",
                   {{"unknown", n}}});
  }
  return out;
}

}  // namespace synth_detail

/// Builds a conclusion segment body with exactly `confirm` confirming and
/// `reverse` reversing keyword occurrences, in random order among fillers.
inline std::string synthetic_conclusion_body(SynthRng& rng, std::size_t confirm, std::size_t reverse) {
  using namespace synth_detail;
  std::vector<std::string> sentences;
  for (std::size_t k = 0; k < confirm; ++k) sentences.push_back(rng.pick(confirm_sentences()));
  for (std::size_t k = 0; k < reverse; ++k) sentences.push_back(rng.pick(reverse_sentences()));
  const std::size_t fillers = rng.between(1, 3);
  for (std::size_t k = 0; k < fillers; ++k) sentences.push_back(rng.pick(filler_sentences()));
  rng.shuffle(sentences);
  std::string out = "La Cour, statuant publiquement, par arrêt contradictoire,\n";
  for (const auto& s : sentences) out += s + "\n";
  return out;
}

/// Draws keyword counts consistent with `outcome`: the winning polarity has
/// strictly more occurrences, ties for Undetermined.
inline std::pair<std::size_t, std::size_t> planted_keyword_counts(SynthRng& rng, Outcome outcome) {
  if (outcome == Outcome::Undetermined) {
    const std::size_t n = rng.between(0, 2);
    return {n, n};
  }
  const std::size_t major = rng.between(1, 3);
  const std::size_t minor = rng.chance(0.1) ? rng.between(0, major - 1) : 0;
  return outcome == Outcome::AppelleeWins ? std::pair{major, minor} : std::pair{minor, major};
}

inline void validate_mix(const std::map<std::string, double>& mix) {
  if (mix.empty()) throw Error(Errc::InvalidMix, "jurisdiction mix is empty");
  double sum = 0.0;
  for (const auto& [name, fraction] : mix) {
    if (name != "douai" && name != "agen") throw Error(Errc::InvalidMix, "no document style for '" + name + "'");
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw Error(Errc::InvalidMix, "fraction out of [0,1] for " + name);
    sum += fraction;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(Errc::InvalidMix, "fractions sum to " + text::format_double(sum));
}

inline SyntheticCorpus generate_synthetic_corpus(std::uint64_t seed, std::size_t n_docs,
                                                 const std::map<std::string, double>& mix,
                                                 const SynthOptions& options = {}) {
  using namespace synth_detail;
  if (n_docs < 1) throw Error(Errc::InvalidParams, "n_docs must be at least 1");
  validate_mix(mix);
  SynthRng rng(seed);

  // Lawyer pool with unique canonical names; index 0 is the dominant lawyer.
  std::vector<Lawyer> pool;
  {
    std::vector<std::pair<std::size_t, std::size_t>> combos;
    for (std::size_t f = 0; f < first_names().size(); ++f)
      for (std::size_t l = 0; l < last_names().size(); ++l) combos.push_back({f, l});
    rng.shuffle(combos);
    const std::size_t size = std::clamp<std::size_t>(n_docs / 4, 12, 400);
    std::set<std::string> seen;
    for (const auto& [f, l] : combos) {
      if (pool.size() == size) break;
      std::string display = first_names()[f] + " " + last_names()[l];
      std::string canonical = text::squeeze_spaces(text::fold(display));
      if (seen.insert(canonical).second) pool.push_back({std::move(display), std::move(canonical)});
    }
  }
  auto draw_lawyer = [&]() -> std::size_t {
    // Skewed popularity over indices 1..size-1.
    const double u = rng.unit();
    return 1 + static_cast<std::size_t>(std::pow(u, 1.6) * static_cast<double>(pool.size() - 1));
  };

  SyntheticCorpus out;
  out.truth.dominant_lawyer = pool[0].display;
  for (std::size_t d = 0; d < n_docs; ++d) {
    // Jurisdiction by cumulative fraction.
    std::string jurisdiction = mix.rbegin()->first;
    {
      const double u = rng.unit();
      double acc = 0.0;
      for (const auto& [name, fraction] : mix) {
        acc += fraction;
        if (u < acc) {
          jurisdiction = name;
          break;
        }
      }
    }
    const bool douai = jurisdiction == "douai";

    // Lawyers on each side.
    std::vector<std::size_t> appellant_ids, appellee_ids;
    if (!rng.chance(options.no_lawyer_probability)) {
      std::set<std::size_t> used;
      auto fill = [&](std::vector<std::size_t>& side, std::size_t count) {
        while (side.size() < count) {
          const std::size_t id = draw_lawyer();
          if (used.insert(id).second) side.push_back(id);
        }
      };
      fill(appellant_ids, rng.chance(0.75) ? 1 : 2);
      if (!rng.chance(options.unrepresented_appellee_probability)) fill(appellee_ids, rng.chance(0.7) ? 1 : 2);
    }
    bool dominant_appellant = false, dominant_present = false;
    if (!appellant_ids.empty() && rng.chance(options.dominant_probability)) {
      dominant_present = true;
      dominant_appellant = appellee_ids.empty() || rng.chance(0.5);
      (dominant_appellant ? appellant_ids : appellee_ids)[0] = 0;
    }

    Outcome outcome;
    if (dominant_present) {
      outcome = dominant_appellant ? Outcome::AppellantWins : Outcome::AppelleeWins;
    } else if (rng.chance(options.undetermined_probability)) {
      outcome = Outcome::Undetermined;
    } else {
      outcome = rng.chance(options.appellee_win_probability) ? Outcome::AppelleeWins : Outcome::AppellantWins;
    }
    const auto [confirm, reverse] = planted_keyword_counts(rng, outcome);

    std::vector<const Lawyer*> appellant_lawyers, appellee_lawyers;
    for (auto id : appellant_ids) appellant_lawyers.push_back(&pool[id]);
    for (auto id : appellee_ids) appellee_lawyers.push_back(&pool[id]);

    const Party appellant = random_party(rng);
    const Party appellee = random_party(rng);
    const bool counsel_markers = douai && rng.chance(options.counsel_marker_probability);

    TextBuilder b;
    b.line(douai ? "COUR D'APPEL DE DOUAI" : "COUR D'APPEL D'AGEN");
    b.line(douai ? "CHAMBRE " + std::to_string(rng.between(1, 8)) + " SECTION " + std::to_string(rng.between(1, 4))
                 : "Chambre civile");
    b.line("ARRÊT DU " + random_date(rng));
    b.line("N° RG " + two_digits(rng.between(15, 19)) + "/0" + std::to_string(rng.between(1000, 9999)));
    b.blank();

    auto party_block = [&](const Party& p, const std::vector<const Lawyer*>& lawyers, bool appellant_side) {
      const std::string segment = appellant_side ? "appellant" : "appellee";
      if (douai) {
        std::string keyword = appellant_side ? "APPELANT" : (rng.chance(0.5) ? "INTIMÉ" : "INTIME");
        if (p.female) keyword += "E";
        b.marker(segment, keyword);
      } else {
        b.marker(segment, appellant_side ? "ENTRE :" : "ET :");
      }
      b.line(p.name);
      b.line(party_detail(rng, p));
      if (lawyers.empty()) {
        b.line(unrepresented_sentence(p));
      } else if (counsel_markers) {
        b.marker(segment + "_counsel", appellant_side ? "AVOCAT DE L'APPELANT" : "AVOCAT DE L'INTIMÉ");
        for (const auto* l : lawyers) {
          b.line((rng.chance(0.15) ? "Maître " : "Me ") + render_lawyer(rng, *l) + ", avocat au barreau de " +
                 rng.pick(cities()));
        }
      } else {
        b.line(counsel_sentence(rng, p, lawyers));
      }
      b.blank();
    };
    party_block(appellant, appellant_lawyers, true);
    party_block(appellee, appellee_lawyers, false);

    static const std::string kAnon = "XYZWVT";
    auto officer = [&](const char* role) {
      return std::string(role) + " : " + (rng.chance(0.5) ? "Madame " : "Monsieur ") + rng.pick(first_names()) + " " +
             kAnon[rng.below(kAnon.size())] + ".";
    };
    b.marker("court_entities", douai ? "COMPOSITION DE LA COUR LORS DES DÉBATS ET DU DÉLIBÉRÉ" : "COMPOSITION DE LA COUR :");
    b.line(officer("Président"));
    b.line(officer("Conseiller"));
    b.line(officer("Greffier"));
    b.blank();

    static const std::vector<std::string> kDouaiDebate = {"FAITS ET PROCÉDURE", "FAITS ET PROCEDURE",
                                                          "FAITS PROCÉDURE", "EXPOSÉ DU LITIGE"};
    static const std::vector<std::string> kAgenDebate = {"EXPOSÉ DU LITIGE", "FAITS ET PROCÉDURE"};
    b.marker("debate", rng.pick(douai ? kDouaiDebate : kAgenDebate));
    std::set<ArticleRef> articles;
    {
      std::vector<std::string> body;
      const std::size_t n = rng.between(3, 6);
      for (std::size_t k = 0; k < n; ++k) body.push_back(rng.pick(debate_sentences()));
      for (auto& c : citations_for(rng)) {
        body.push_back(c.sentence);
        articles.insert(c.refs.begin(), c.refs.end());
      }
      rng.shuffle(body);
      std::string paragraph;
      for (std::size_t k = 0; k < body.size(); ++k) {
        paragraph += (paragraph.empty() ? "" : " ") + body[k];
        if (k + 1 == body.size() || rng.chance(0.35)) {
          b.line(paragraph);
          b.blank();
          paragraph.clear();
        }
      }
    }

    static const std::vector<std::string> kConclusion = {"PAR CES MOTIFS", "PAR CES MOTIFS,", "PAR CES MOTIFS :"};
    b.marker("conclusion", rng.pick(kConclusion));
    std::string body = synthetic_conclusion_body(rng, confirm, reverse);
    body.pop_back();  // builder adds the final newline
    b.line(body);

    auto [text_body, spans] = b.finish();
    Document doc = make_document(std::move(text_body), jurisdiction, "synthetic/" + jurisdiction + "/" +
                                                                        std::to_string(d) + ".txt");
    TruthRecord rec;
    rec.doc_id = doc.doc_id;
    for (const auto* l : appellant_lawyers) rec.appellant_lawyers.push_back(l->display);
    for (const auto* l : appellee_lawyers) rec.appellee_lawyers.push_back(l->display);
    rec.outcome = outcome;
    rec.confirm_count = confirm;
    rec.reverse_count = reverse;
    rec.articles = std::move(articles);
    rec.segments = std::move(spans);
    out.truth.records.push_back(std::move(rec));
    out.documents.push_back(std::move(doc));
  }
  // Identical texts would share a content hash; keep ids unique.
  disambiguate_ids(out.documents);
  for (std::size_t d = 0; d < n_docs; ++d) out.truth.records[d].doc_id = out.documents[d].doc_id;
  return out;
}

// truth.jsonl

inline nlohmann::ordered_json to_json(const TruthRecord& r) {
  nlohmann::ordered_json articles = nlohmann::ordered_json::array();
  for (const auto& a : r.articles) articles.push_back({{"code", a.code}, {"number", a.number}});
  nlohmann::ordered_json segments = nlohmann::ordered_json::array();
  for (const auto& s : r.segments) segments.push_back({{"name", s.name}, {"start", s.start}, {"end", s.end}});
  return {{"doc_id", r.doc_id},
          {"appellant_lawyers", r.appellant_lawyers},
          {"appellee_lawyers", r.appellee_lawyers},
          {"outcome", std::string(to_string(r.outcome))},
          {"confirm_count", r.confirm_count},
          {"reverse_count", r.reverse_count},
          {"articles", articles},
          {"segments", segments}};
}

inline TruthRecord truth_from_json(const nlohmann::json& j) {
  TruthRecord r;
  try {
    r.doc_id = j.at("doc_id").get<std::string>();
    r.appellant_lawyers = j.at("appellant_lawyers").get<std::vector<std::string>>();
    r.appellee_lawyers = j.at("appellee_lawyers").get<std::vector<std::string>>();
    r.outcome = outcome_from_string(j.at("outcome").get<std::string>());
    r.confirm_count = j.value("confirm_count", std::size_t{0});
    r.reverse_count = j.value("reverse_count", std::size_t{0});
    for (const auto& a : j.at("articles")) r.articles.insert({a.at("code").get<std::string>(), a.at("number").get<std::string>()});
    for (const auto& s : j.at("segments")) r.segments.push_back({s.at("name").get<std::string>(), s.at("start").get<std::size_t>(), s.at("end").get<std::size_t>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("truth record: ") + e.what());
  }
  return r;
}

inline void write_truth(const std::filesystem::path& path, const SyntheticGroundTruth& truth) {
  std::vector<nlohmann::ordered_json> rows;
  for (const auto& r : truth.records) rows.push_back(to_json(r));
  write_jsonl(path, rows);
}

inline std::vector<TruthRecord> read_truth(const std::filesystem::path& path) {
  std::vector<TruthRecord> out;
  read_jsonl(path, [&](const nlohmann::json& j) { out.push_back(truth_from_json(j)); });
  return out;
}

/// Parses "douai=0.5,agen=0.5".
inline std::map<std::string, double> parse_mix(std::string_view list) {
  std::map<std::string, double> mix;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    const std::string_view item = text::trim(list.substr(pos, comma - pos));
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw Error(Errc::InvalidMix, "expected name=fraction, got '" + std::string(item) + "'");
      const std::string name(text::trim(item.substr(0, eq)));
      const std::string value(text::trim(item.substr(eq + 1)));
      double fraction = 0.0;
      const auto res = std::from_chars(value.data(), value.data() + value.size(), fraction);
      if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw Error(Errc::InvalidMix, "bad fraction '" + value + "'");
      }
      mix[name] += fraction;
    }
    pos = comma + 1;
  }
  return mix;
}

}  // namespace courtnet
