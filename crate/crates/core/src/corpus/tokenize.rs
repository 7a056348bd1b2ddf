use std::collections::HashSet;

/// Tokenizer settings. The default lowercases and keeps every token: no
/// stop list, no stemming.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TokenizerConfig {
    pub stopwords: Option<HashSet<String>>,
}

impl TokenizerConfig {
    pub fn with_stopwords<I: IntoIterator<Item = S>, S: Into<String>>(words: I) -> Self {
        Self { stopwords: Some(words.into_iter().map(|w| w.into().to_lowercase()).collect()) }
    }
}

/// Lowercase and split on runs of non-alphanumeric characters.
pub fn tokenize(text: &str, config: &TokenizerConfig) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .filter(|t| config.stopwords.as_ref().is_none_or(|s| !s.contains(t)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c = TokenizerConfig::default();
        assert_eq!(tokenize("A b, a!", &c), vec!["a", "b", "a"]);
        assert!(tokenize("", &c).is_empty());
        assert_eq!(tokenize("It's 42", &c), vec!["it", "s", "42"]);
        assert_eq!(tokenize("  Über--straße\tX ", &c), vec!["über", "straße", "x"]);
    }

    #[test]
    fn stop_list_is_optional() {
        let c = TokenizerConfig::with_stopwords(["The"]);
        assert_eq!(tokenize("the cat THE hat", &c), vec!["cat", "hat"]);
    }
}
