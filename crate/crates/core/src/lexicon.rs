//! Shipped word lists: sentence-splitter abbreviations, stopwords for
//! lexical density, and the English participle lists used by the passive
//! heuristic.
//!
//! Lists are versioned with [`LEXICON_VERSION`]; any edit changes reported
//! statistics and must bump it.

use crate::corpus::LanguageCode;

pub const LEXICON_VERSION: &str = "1";

const ABBREV_EN: &[&str] = &[
    "Mr.", "Mrs.", "Ms.", "Dr.", "Prof.", "Sr.", "Jr.", "St.", "Mt.", "No.", "Nos.", "Art.",
    "Arts.", "para.", "Para.", "vs.", "etc.", "e.g.", "i.e.", "cf.", "approx.", "Jan.", "Feb.",
    "Mar.", "Apr.", "Jun.", "Jul.", "Aug.", "Sep.", "Sept.", "Oct.", "Nov.", "Dec.", "Rev.",
    "Gen.", "Col.", "Lt.", "Sgt.", "Hon.", "Rt.", "Co.", "Corp.", "Inc.", "Ltd.", "p.", "pp.",
    "vol.", "Vol.", "ed.", "eds.", "op.", "U.S.", "U.K.", "E.U.",
];

const ABBREV_DE: &[&str] = &[
    "Dr.", "Prof.", "Hr.", "Fr.", "Nr.", "Art.", "Abs.", "Abschn.", "bzw.", "ca.", "d.h.",
    "evtl.", "ggf.", "inkl.", "u.a.", "usw.", "vgl.", "z.B.", "z.T.", "s.", "S.", "Str.", "St.",
    "bzgl.", "Jan.", "Feb.", "Jh.", "Mio.", "Mrd.", "o.ä.", "u.ä.", "sog.", "zzgl.",
];

const ABBREV_FR: &[&str] = &[
    "M.", "MM.", "Mme.", "Mlle.", "Dr.", "Pr.", "St.", "Ste.", "art.", "Art.", "n°.", "No.",
    "p.", "pp.", "etc.", "cf.", "ex.", "env.", "av.", "apr.", "J.-C.", "c.-à-d.", "vol.",
    "chap.", "éd.",
];

const ABBREV_ES: &[&str] = &[
    "Sr.", "Sra.", "Srta.", "Dr.", "Dra.", "D.", "Dña.", "Ud.", "Uds.", "Vd.", "Vds.", "art.",
    "Art.", "núm.", "Núm.", "pág.", "págs.", "p.", "pp.", "etc.", "cf.", "aprox.", "EE.UU.",
    "vol.", "cap.", "Excmo.", "Excma.",
];

pub fn abbreviations(lang: LanguageCode) -> &'static [&'static str] {
    match lang.as_str() {
        "en" => ABBREV_EN,
        "de" => ABBREV_DE,
        "fr" => ABBREV_FR,
        "es" => ABBREV_ES,
        _ => &[],
    }
}

/// Whether `word` (with its trailing period) is a listed abbreviation.
/// Single uppercase initials such as `J.` always count.
pub fn is_abbreviation(lang: LanguageCode, word: &str) -> bool {
    let w = word.trim_start_matches(['(', '"', '\'', '“', '„', '«']);
    if !w.ends_with('.') {
        return false;
    }
    let mut chars = w.chars();
    if let (Some(c), Some('.'), None) = (chars.next(), chars.next(), chars.next()) {
        if c.is_uppercase() {
            return true;
        }
    }
    abbreviations(lang).contains(&w)
}

const STOP_EN: &[&str] = &[
    "a", "about", "above", "after", "again", "against", "all", "also", "am", "an", "and", "any",
    "are", "as", "at", "be", "because", "been", "before", "being", "below", "between", "both",
    "but", "by", "can", "could", "did", "do", "does", "doing", "down", "during", "each", "few",
    "for", "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers",
    "herself", "him", "himself", "his", "how", "i", "if", "in", "into", "is", "it", "its",
    "itself", "just", "may", "me", "might", "more", "most", "must", "my", "myself", "no", "nor",
    "not", "now", "of", "off", "on", "once", "only", "or", "other", "our", "ours", "ourselves",
    "out", "over", "own", "same", "shall", "she", "should", "so", "some", "such", "than",
    "that", "the", "their", "theirs", "them", "themselves", "then", "there", "these", "they",
    "this", "those", "through", "to", "too", "under", "until", "up", "very", "was", "we",
    "were", "what", "when", "where", "which", "while", "who", "whom", "why", "will", "with",
    "would", "you", "your", "yours", "yourself", "yourselves",
];

const STOP_DE: &[&str] = &[
    "aber", "alle", "allem", "allen", "aller", "alles", "als", "also", "am", "an", "ander",
    "andere", "anderen", "auch", "auf", "aus", "bei", "bin", "bis", "bist", "da", "damit",
    "dann", "das", "dass", "daß", "dem", "den", "denn", "der", "des", "dich", "die", "dies",
    "diese", "diesem", "diesen", "dieser", "dieses", "dir", "doch", "dort", "du", "durch",
    "ein", "eine", "einem", "einen", "einer", "eines", "er", "es", "etwas", "euch", "euer",
    "für", "gegen", "hat", "hatte", "haben", "hier", "hin", "ich", "ihm", "ihn", "ihnen",
    "ihr", "ihre", "ihrem", "ihren", "ihrer", "im", "in", "ist", "ja", "jede", "jedem",
    "jeden", "jeder", "kann", "kein", "keine", "können", "man", "mich", "mir", "mit", "muss",
    "nach", "nicht", "nichts", "noch", "nun", "nur", "ob", "oder", "ohne", "sehr", "sein",
    "seine", "seinem", "seinen", "seiner", "sich", "sie", "sind", "so", "soll", "sollte",
    "über", "um", "und", "uns", "unser", "unsere", "unter", "vom", "von", "vor", "war",
    "waren", "was", "weil", "wenn", "werden", "wie", "wir", "wird", "wo", "zu", "zum", "zur",
    "zwischen",
];

const STOP_FR: &[&str] = &[
    "a", "ai", "au", "aux", "avec", "avez", "avons", "ce", "ces", "cet", "cette", "ceux",
    "dans", "de", "des", "du", "elle", "elles", "en", "est", "et", "eu", "il", "ils", "je",
    "l", "la", "le", "les", "leur", "leurs", "lui", "ma", "mais", "me", "même", "mes", "moi",
    "mon", "ne", "nos", "notre", "nous", "on", "ont", "ou", "où", "par", "pas", "pour", "qu",
    "que", "qui", "s", "sa", "se", "ses", "si", "son", "sont", "sur", "ta", "te", "tes", "toi",
    "ton", "tous", "tout", "très", "tu", "un", "une", "vos", "votre", "vous", "y", "c", "d",
    "j", "m", "n", "t", "été", "être", "avoir", "sans", "sous", "entre", "comme", "aussi",
    "plus", "donc", "car", "ni", "or", "dont", "cela", "ça",
];

const STOP_ES: &[&str] = &[
    "a", "al", "algo", "algunos", "ante", "antes", "como", "con", "contra", "cual", "cuando",
    "de", "del", "desde", "donde", "durante", "e", "el", "él", "ella", "ellas", "ellos", "en",
    "entre", "era", "es", "esa", "esas", "ese", "eso", "esos", "esta", "está", "estas", "este",
    "esto", "estos", "fue", "ha", "han", "hay", "la", "las", "le", "les", "lo", "los", "más",
    "me", "mi", "mis", "muy", "ni", "no", "nos", "nosotros", "o", "os", "otra", "otro", "para",
    "pero", "poco", "por", "porque", "que", "qué", "quien", "se", "sea", "ser", "si", "sí",
    "sin", "sobre", "son", "su", "sus", "también", "tanto", "te", "tiene", "todo", "todos",
    "tu", "tus", "u", "un", "una", "uno", "unos", "usted", "y", "ya", "yo", "hemos", "sido",
];

pub fn stopwords(lang: LanguageCode) -> &'static [&'static str] {
    match lang.as_str() {
        "en" => STOP_EN,
        "de" => STOP_DE,
        "fr" => STOP_FR,
        "es" => STOP_ES,
        _ => &[],
    }
}

pub const BE_FORMS: &[&str] = &["am", "is", "are", "was", "were", "be", "been", "being"];

pub const IRREGULAR_PARTICIPLES: &[&str] = &[
    "arisen", "awoken", "beaten", "become", "begun", "bent", "bound", "bitten", "blown",
    "broken", "brought", "built", "burnt", "bought", "caught", "chosen", "come", "cut",
    "dealt", "done", "drawn", "driven", "drunk", "eaten", "fallen", "fed", "felt", "fought",
    "found", "flown", "forbidden", "forgotten", "forgiven", "frozen", "given", "gone", "got",
    "gotten", "grown", "held", "hidden", "hit", "hung", "hurt", "kept", "known", "laid", "led",
    "left", "lent", "let", "lost", "made", "meant", "met", "paid", "put", "read", "ridden",
    "risen", "run", "said", "seen", "sent", "set", "shaken", "shown", "shut", "sold", "sought",
    "spent", "spoken", "spread", "stolen", "struck", "sung", "sworn", "taken", "taught", "told",
    "thought", "thrown", "understood", "undertaken", "upheld", "withdrawn", "won", "worn",
    "written", "overcome", "overseen", "overtaken", "mistaken",
];

/// Common words that end in `-ed`/`-en` without being participles.
pub const NOT_PARTICIPLES: &[&str] = &[
    "then", "when", "often", "even", "seven", "eleven", "open", "oven", "token", "citizen",
    "children", "women", "men", "garden", "kitchen", "heaven", "happen", "listen", "between",
    "ten", "hen", "pen", "amen", "screen", "green", "queen", "keen", "teen", "been",
    "red", "bed", "need", "indeed", "speed", "seed", "feed", "greed", "shed", "wed",
    "hundred", "sacred", "naked", "wicked", "kindred",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abbreviation_lookup() {
        assert!(is_abbreviation(LanguageCode::EN, "Dr."));
        assert!(is_abbreviation(LanguageCode::DE, "z.B."));
        assert!(is_abbreviation(LanguageCode::EN, "J."));
        assert!(!is_abbreviation(LanguageCode::EN, "came."));
        assert!(!is_abbreviation(LanguageCode::EN, "Dr"));
    }

    #[test]
    fn stopword_lists_are_lowercase_and_unique() {
        for lang in [LanguageCode::EN, LanguageCode::DE, LanguageCode::FR, LanguageCode::ES] {
            let list = stopwords(lang);
            let mut seen = std::collections::HashSet::new();
            for w in list {
                assert_eq!(*w, w.to_lowercase(), "{lang}: {w}");
                assert!(seen.insert(*w), "{lang}: duplicate {w}");
            }
        }
    }
}
