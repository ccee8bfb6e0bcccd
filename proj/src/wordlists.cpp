#include "causalmt/wordlists.hpp"

namespace causalmt::wordlists {

namespace {

using sv = std::string_view;

constexpr sv kAbbrevEn[] = {
    "Mr", "Mrs", "Ms", "Dr", "Prof", "St", "Jr", "Sr", "vs", "etc", "cf",
    "No", "Inc", "Ltd", "Co", "Gen", "Col", "Sgt", "Rev", "Hon", "Dept",
    "Univ", "approx", "Ave", "Blvd", "Fig", "Vol", "pp", "ed", "al",
    "e.g", "i.e", "a.m", "p.m", "U.S", "U.K",
};

constexpr sv kAbbrevDe[] = {
    "Dr", "Prof", "Nr", "Abs", "Art", "bzw", "ca", "etc", "evtl", "ggf",
    "inkl", "Mio", "Mrd", "sog", "usw", "vgl", "z.B", "z.T", "d.h", "u.a",
    "Hr", "Fr", "Abg", "Bd", "S",
};

constexpr sv kAbbrevFr[] = {
    "M", "MM", "Mme", "Mmes", "Mlle", "Dr", "Me", "Pr", "St", "Ste", "etc",
    "cf", "art", "chap", "fig", "vol", "éd", "p", "ex", "p.ex",
};

constexpr sv kAbbrevEs[] = {
    "Sr", "Sra", "Srta", "Dr", "Dra", "D", "Dña", "Ud", "Uds", "Vd", "Vds",
    "etc", "núm", "pág", "art", "cap", "fig", "vol", "aprox", "tel",
    "Excmo", "Ilmo",
};

constexpr sv kStopEn[] = {
    "a", "about", "above", "after", "again", "against", "all", "also", "am",
    "an", "and", "any", "are", "as", "at", "be", "because", "been", "before",
    "being", "below", "between", "both", "but", "by", "can", "cannot",
    "could", "did", "do", "does", "doing", "down", "during", "each", "few",
    "for", "from", "further", "had", "has", "have", "having", "he", "her",
    "here", "hers", "herself", "him", "himself", "his", "how", "i", "if",
    "in", "into", "is", "it", "its", "itself", "just", "may", "me", "might",
    "more", "most", "must", "my", "myself", "no", "nor", "not", "now", "of",
    "off", "on", "once", "only", "or", "other", "our", "ours", "ourselves",
    "out", "over", "own", "same", "shall", "she", "should", "so", "some",
    "such", "than", "that", "the", "their", "theirs", "them", "themselves",
    "then", "there", "these", "they", "this", "those", "through", "to",
    "too", "under", "until", "up", "very", "was", "we", "were", "what",
    "when", "where", "which", "while", "who", "whom", "why", "will", "with",
    "would", "you", "your", "yours", "yourself", "yourselves",
};

constexpr sv kStopDe[] = {
    "aber", "alle", "allem", "allen", "aller", "alles", "als", "also", "am",
    "an", "andere", "anderen", "auch", "auf", "aus", "bei", "bin", "bis",
    "bist", "da", "damit", "dann", "das", "dass", "daß", "dein", "dem",
    "den", "der", "des", "dessen", "die", "dies", "diese", "diesem",
    "diesen", "dieser", "dieses", "doch", "dort", "du", "durch", "ein",
    "eine", "einem", "einen", "einer", "eines", "er", "es", "etwas", "euer",
    "eure", "für", "gegen", "gewesen", "hab", "habe", "haben", "hat",
    "hatte", "hatten", "hier", "hin", "hinter", "ich", "ihr", "ihre", "im",
    "in", "indem", "ins", "ist", "ja", "jede", "jedem", "jeden", "jeder",
    "jedes", "jene", "jenem", "jenen", "jener", "jenes", "jetzt", "kann",
    "kein", "keine", "können", "könnte", "machen", "man", "mein", "meine",
    "mit", "muss", "muß", "nach", "nicht", "nichts", "noch", "nun", "nur",
    "ob", "oder", "ohne", "sehr", "sein", "seine", "sich", "sie", "sind",
    "so", "soll", "sollte", "sondern", "sonst", "über", "um", "und", "uns",
    "unser", "unter", "vom", "von", "vor", "wann", "war", "waren", "warum",
    "was", "weiter", "weitere", "wenn", "wer", "werde", "werden", "wie",
    "wieder", "will", "wir", "wird", "wirst", "wo", "wollen", "wollte",
    "würde", "würden", "zu", "zum", "zur", "zwar", "zwischen",
};

constexpr sv kStopFr[] = {
    "a", "ai", "alors", "après", "au", "aussi", "aux", "avaient", "avait",
    "avant", "avec", "avez", "avoir", "avons", "bien", "car", "ce", "cela",
    "celle", "celles", "celui", "ces", "cette", "ceux", "chez", "comme",
    "contre", "dans", "de", "depuis", "des", "donc", "du", "elle", "elles",
    "en", "encore", "entre", "est", "et", "eux", "fait", "faire", "il",
    "ils", "je", "jusqu", "la", "le", "les", "leur", "leurs", "lui", "là",
    "ma", "mais", "me", "mes", "moi", "moins", "mon", "même", "ne", "non",
    "nos", "notre", "nous", "on", "ont", "ou", "oui", "où", "par", "pas",
    "peu", "peut", "plus", "pour", "qu", "quand", "que", "qui", "sa",
    "sans", "se", "selon", "sera", "serait", "ses", "si", "son", "sont",
    "sous", "sur", "ta", "te", "tes", "toi", "ton", "tous", "tout",
    "toute", "toutes", "très", "trop", "tu", "un", "une", "vers", "vos",
    "votre", "vous", "y", "à", "ça", "été", "être",
};

constexpr sv kStopEs[] = {
    "a", "al", "algo", "algunas", "algunos", "ante", "antes", "como", "con",
    "contra", "cual", "cuando", "de", "del", "desde", "donde", "durante",
    "e", "el", "ella", "ellas", "ellos", "en", "entre", "era", "eran", "es",
    "esa", "esas", "ese", "eso", "esos", "esta", "estaba", "estaban",
    "estas", "este", "esto", "estos", "está", "están", "fue", "fueron",
    "ha", "haber", "había", "han", "has", "hasta", "hay", "la", "las",
    "le", "les", "lo", "los", "me", "mi", "mis", "mucho", "muchos", "muy",
    "más", "nada", "ni", "no", "nos", "nosotros", "nuestra", "nuestro",
    "o", "os", "otra", "otros", "para", "pero", "poco", "por", "porque",
    "que", "quien", "qué", "se", "sea", "según", "ser", "será", "serán",
    "si", "sido", "siendo", "sin", "sobre", "son", "su", "sus", "sí",
    "también", "tan", "tanto", "te", "tiene", "tienen", "todo", "todos",
    "tras", "tu", "tus", "un", "una", "uno", "unos", "vosotros", "y", "ya",
    "yo", "él",
};

constexpr sv kIrregularParticiples[] = {
    "become", "begun", "bent", "bet", "bid", "blown", "born", "borne",
    "bound", "bought", "brought", "built", "burnt", "burst", "caught",
    "come", "cost", "cut", "dealt", "done", "drawn", "drunk", "dug", "fed",
    "felt", "fled", "flown", "fought", "found", "gone", "grown", "heard",
    "held", "hit", "hung", "hurt", "kept", "known", "laid", "led", "left",
    "lent", "let", "lit", "lost", "made", "meant", "met", "paid", "put",
    "read", "run", "rung", "said", "sat", "sent", "set", "shot", "shown",
    "shut", "slept", "sold", "sought", "spent", "split", "spread", "spun",
    "stood", "struck", "strung", "stuck", "stung", "sung", "sunk", "swept",
    "sworn", "swum", "swung", "taught", "thought", "thrown", "told",
    "torn", "understood", "upset", "won", "worn", "wound", "wrung",
};

}  // namespace

std::span<const std::string_view> abbreviations(LanguageCode lang) {
  if (lang == kEn) return kAbbrevEn;
  if (lang == kDe) return kAbbrevDe;
  if (lang == kFr) return kAbbrevFr;
  if (lang == kEs) return kAbbrevEs;
  return {};
}

std::span<const std::string_view> stopwords(LanguageCode lang) {
  if (lang == kEn) return kStopEn;
  if (lang == kDe) return kStopDe;
  if (lang == kFr) return kStopFr;
  if (lang == kEs) return kStopEs;
  return {};
}

std::span<const std::string_view> irregular_participles() {
  return kIrregularParticiples;
}

}  // namespace causalmt::wordlists
