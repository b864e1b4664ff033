//! Word-level tokenization shared by the syntax and transform stages.
//!
//! Clitics from a fixed table (`'m 's 're 'll 've 'd n't`) are split off
//! their host so that pronouns and auxiliaries can be rewritten
//! independently: `he's` becomes `he 's`, `don't` becomes `do n't`, and
//! `can't` becomes `ca n't` (the host keeps its spelling so that
//! [`detokenize`] restores the original word).

/// Clitic suffixes split from their host word.
pub const CLITICS: [&str; 7] = ["n't", "'s", "'m", "'re", "'ll", "'ve", "'d"];

const DETACHED_PUNCT: [char; 3] = [',', ';', ':'];

/// True for tokens that attach to the preceding token when detokenizing.
pub fn is_clitic(token: &str) -> bool {
    CLITICS.contains(&token)
}

fn is_punct(token: &str) -> bool {
    let mut chars = token.chars();
    matches!((chars.next(), chars.next()), (Some(c), None) if DETACHED_PUNCT.contains(&c))
}

fn split_clitic(word: &str) -> (&str, Option<&str>) {
    for clitic in CLITICS {
        if word.len() > clitic.len() && word.ends_with(clitic) {
            let host = &word[..word.len() - clitic.len()];
            if !host.ends_with('\'') {
                return (host, Some(&word[host.len()..]));
            }
        }
    }
    (word, None)
}

/// Split normalized text into word tokens with clitics and commas detached.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for word in text.split_whitespace() {
        let mut trailing = Vec::new();
        let mut core = word;
        while let Some(c) = core.chars().next().filter(|c| DETACHED_PUNCT.contains(c)) {
            tokens.push(c.to_string());
            core = &core[c.len_utf8()..];
        }
        while let Some(c) = core.chars().last().filter(|c| DETACHED_PUNCT.contains(c)) {
            trailing.push(c.to_string());
            core = &core[..core.len() - c.len_utf8()];
        }
        if !core.is_empty() {
            let (host, clitic) = split_clitic(core);
            tokens.push(host.to_string());
            if let Some(clitic) = clitic {
                tokens.push(clitic.to_string());
            }
        }
        tokens.extend(trailing.into_iter().rev());
    }
    tokens
}

/// Inverse of [`tokenize`] for normalized text.
pub fn detokenize<S: AsRef<str>>(tokens: &[S]) -> String {
    let mut out = String::new();
    for token in tokens {
        let token = token.as_ref();
        if !out.is_empty() && !is_clitic(token) && !is_punct(token) {
            out.push(' ');
        }
        out.push_str(token);
    }
    out
}
