//! ROUGE-1/2/L F1 and the LLM expected-rating metric, plus aggregate reports.
//!
//! Tokenization here is deliberately simple and documented: lowercase,
//! whitespace-split, ASCII punctuation stripped from token edges. All scores
//! are validated against independent brute-force oracles in the test suite
//! rather than against any external ROUGE package.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::LabeledExample;
use crate::error::{Error, Result};
use crate::exec;
use crate::llm::{self, ChatClient, ScoreScale};
use crate::teacher::{chunk_and_summarize, TeacherModel};

/// Precision/recall/F1 triple for one candidate/reference pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RougeScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl RougeScore {
    fn from_counts(overlap: usize, candidate_total: usize, reference_total: usize) -> Self {
        let precision = if candidate_total > 0 {
            overlap as f64 / candidate_total as f64
        } else {
            0.0
        };
        let recall = if reference_total > 0 {
            overlap as f64 / reference_total as f64
        } else {
            0.0
        };
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        RougeScore { precision, recall, f1 }
    }
}

/// Lowercased whitespace tokens with ASCII punctuation trimmed from both ends.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(|t| t.trim_matches(|c: char| c.is_ascii_punctuation()).to_lowercase())
        .filter(|t| !t.is_empty())
        .collect()
}

fn ngram_counts(tokens: &[String], n: usize) -> BTreeMap<&[String], usize> {
    let mut counts: BTreeMap<&[String], usize> = BTreeMap::new();
    if tokens.len() >= n {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// ROUGE-N F1 via clipped n-gram overlap counts.
pub fn rouge_n(candidate: &str, reference: &str, n: usize) -> Result<RougeScore> {
    if !(1..=2).contains(&n) {
        return Err(Error::InvalidArg(format!("rouge_n supports n in {{1,2}}, got {n}")));
    }
    let ref_tokens = tokenize(reference);
    if ref_tokens.is_empty() {
        return Err(Error::InvalidArg("rouge reference is empty".into()));
    }
    let cand_tokens = tokenize(candidate);
    let ref_counts = ngram_counts(&ref_tokens, n);
    let cand_counts = ngram_counts(&cand_tokens, n);
    let overlap: usize = cand_counts
        .iter()
        .map(|(gram, c)| (*c).min(ref_counts.get(gram).copied().unwrap_or(0)))
        .sum();
    let cand_total = cand_tokens.len().saturating_sub(n - 1);
    let ref_total = ref_tokens.len().saturating_sub(n - 1);
    Ok(RougeScore::from_counts(overlap, cand_total, ref_total))
}

/// ROUGE-L F1 via longest common subsequence over token sequences.
pub fn rouge_l(candidate: &str, reference: &str) -> Result<RougeScore> {
    let ref_tokens = tokenize(reference);
    if ref_tokens.is_empty() {
        return Err(Error::InvalidArg("rouge reference is empty".into()));
    }
    let cand_tokens = tokenize(candidate);
    let lcs = lcs_len(&cand_tokens, &ref_tokens);
    Ok(RougeScore::from_counts(lcs, cand_tokens.len(), ref_tokens.len()))
}

/// Rolling two-row LCS table.
fn lcs_len(a: &[String], b: &[String]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut curr = vec![0usize; b.len() + 1];
    for ai in a {
        for (j, bj) in b.iter().enumerate() {
            curr[j + 1] = if ai == bj {
                prev[j] + 1
            } else {
                prev[j + 1].max(curr[j])
            };
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

/// Expected 1-10 rating derived from an LLM's first-token alternatives.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LEvalScore {
    pub value: f64,
    /// (rating, probability) pairs that contributed to the expectation.
    pub rating_mass: Vec<(u8, f64)>,
}

/// Prompts the client for a 1-10 rating and returns the expectation over the
/// integer ratings found among the first-token alternatives. Ratings missing
/// from the alternatives contribute probability zero; the mass is NOT
/// renormalized, so the value is a lower bound on the true expectation.
pub fn l_eval(article: &str, summary: &str, client: &dyn ChatClient) -> Result<LEvalScore> {
    let request = llm::build_score_prompt_text(article, summary, ScoreScale::OneToTen, 5);
    let exchange = llm::chat(client, &request)?;
    l_eval_from_alternatives(&exchange.response.first_token_alternatives)
}

/// The expectation step of [`l_eval`], separated so rating masses can be fed
/// directly in tests.
pub fn l_eval_from_alternatives(alternatives: &[(String, f64)]) -> Result<LEvalScore> {
    let mut mass: BTreeMap<u8, f64> = BTreeMap::new();
    for (token, prob) in alternatives {
        if let Ok(rating) = token.trim().parse::<u8>() {
            if (1..=10).contains(&rating) {
                *mass.entry(rating).or_insert(0.0) += prob;
            }
        }
    }
    if mass.is_empty() {
        return Err(Error::UnparsableRating);
    }
    let value = mass.iter().map(|(r, p)| f64::from(*r) * p).sum();
    Ok(LEvalScore {
        value,
        rating_mass: mass.into_iter().collect(),
    })
}

/// What is being evaluated against the test split.
pub enum EvalInput<'a> {
    /// A trained extractive model; candidates are its rendered summaries.
    Teacher {
        model: &'a dyn TeacherModel,
        summary_size: usize,
    },
    /// Pre-computed candidate summaries keyed by document id.
    Predictions(&'a BTreeMap<String, String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DocScores {
    pub doc_id: String,
    pub rouge1: f64,
    pub rouge2: f64,
    pub rouge_l: f64,
    pub l_eval: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct MeanScores {
    pub rouge1: f64,
    pub rouge2: f64,
    pub rouge_l: f64,
    pub l_eval: Option<f64>,
}

/// Per-document rows plus their mean, for one model on one split.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalReport {
    pub schema_version: u32,
    pub label: String,
    pub rows: Vec<DocScores>,
    pub mean: MeanScores,
}

pub const EVAL_SCHEMA_VERSION: u32 = 1;

/// Scores candidates against the references of a labeled test split.
/// Extractive references are rendered to text before scoring. L-Eval rows are
/// requested from `client` in submission order under its in-flight bound.
pub fn evaluate(
    input: &EvalInput<'_>,
    test: &[LabeledExample],
    want_leval: bool,
    client: Option<&dyn ChatClient>,
) -> Result<EvalReport> {
    if test.is_empty() {
        return Err(Error::InvalidArg("test split is empty".into()));
    }
    let mut pairs: Vec<(String, String, String)> = Vec::with_capacity(test.len());
    for example in test {
        let reference = example
            .reference_text()
            .ok_or_else(|| Error::InvalidArg(format!("document {} has no reference", example.document.id)))?;
        let candidate = match input {
            EvalInput::Teacher { model, summary_size } => {
                let summary = chunk_and_summarize(*model, &example.document, *summary_size)?;
                crate::corpus::render_extractive(&example.document, &summary)
            }
            EvalInput::Predictions(map) => map
                .get(&example.document.id)
                .cloned()
                .ok_or_else(|| Error::InvalidArg(format!("no prediction for document {}", example.document.id)))?,
        };
        pairs.push((example.document.id.clone(), candidate, reference));
    }

    let mut rows: Vec<DocScores> = exec::map_collect(&pairs, |(id, cand, reference)| {
        let r1 = rouge_n(cand, reference, 1).map(|s| s.f1);
        let r2 = rouge_n(cand, reference, 2).map(|s| s.f1);
        let rl = rouge_l(cand, reference).map(|s| s.f1);
        match (r1, r2, rl) {
            (Ok(r1), Ok(r2), Ok(rl)) => Ok(DocScores {
                doc_id: id.clone(),
                rouge1: r1,
                rouge2: r2,
                rouge_l: rl,
                l_eval: None,
            }),
            (r1, r2, rl) => Err([r1.err(), r2.err(), rl.err()]
                .into_iter()
                .flatten()
                .next()
                .expect("at least one error present")),
        }
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    if want_leval {
        let client = client.ok_or_else(|| Error::InvalidArg("L-Eval requested without a client".into()))?;
        let articles: Vec<String> = test.iter().map(|e| e.document.full_text()).collect();
        for (row, (article, (_, cand, _))) in rows.iter_mut().zip(articles.iter().zip(pairs.iter())) {
            row.l_eval = Some(l_eval(article, cand, client)?.value);
        }
    }

    let mean = mean_of_rows(&rows);
    Ok(EvalReport {
        schema_version: EVAL_SCHEMA_VERSION,
        label: String::new(),
        rows,
        mean,
    })
}

fn mean_of_rows(rows: &[DocScores]) -> MeanScores {
    let n = rows.len().max(1) as f64;
    let l_eval = if rows.iter().all(|r| r.l_eval.is_some()) && !rows.is_empty() {
        Some(rows.iter().filter_map(|r| r.l_eval).sum::<f64>() / n)
    } else {
        None
    };
    MeanScores {
        rouge1: rows.iter().map(|r| r.rouge1).sum::<f64>() / n,
        rouge2: rows.iter().map(|r| r.rouge2).sum::<f64>() / n,
        rouge_l: rows.iter().map(|r| r.rouge_l).sum::<f64>() / n,
        l_eval,
    }
}

/// Mean and standard deviation of one metric across runs.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

fn mean_std(values: &[f64]) -> MeanStd {
    let n = values.len().max(1) as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    MeanStd { mean, std: var.sqrt() }
}

/// Aggregate of several single-run reports (e.g. across seeds).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AggregateRow {
    pub label: String,
    pub runs: usize,
    pub rouge1: MeanStd,
    pub rouge2: MeanStd,
    pub rouge_l: MeanStd,
    pub l_eval: Option<MeanStd>,
}

/// Collapses reports sharing a label into mean +/- std rows.
pub fn aggregate_reports(reports: &[EvalReport]) -> Vec<AggregateRow> {
    let mut by_label: BTreeMap<&str, Vec<&EvalReport>> = BTreeMap::new();
    for report in reports {
        by_label.entry(report.label.as_str()).or_default().push(report);
    }
    by_label
        .into_iter()
        .map(|(label, group)| {
            let r1: Vec<f64> = group.iter().map(|r| r.mean.rouge1).collect();
            let r2: Vec<f64> = group.iter().map(|r| r.mean.rouge2).collect();
            let rl: Vec<f64> = group.iter().map(|r| r.mean.rouge_l).collect();
            let le: Vec<f64> = group.iter().filter_map(|r| r.mean.l_eval).collect();
            AggregateRow {
                label: label.to_string(),
                runs: group.len(),
                rouge1: mean_std(&r1),
                rouge2: mean_std(&r2),
                rouge_l: mean_std(&rl),
                l_eval: if le.len() == group.len() && !le.is_empty() {
                    Some(mean_std(&le))
                } else {
                    None
                },
            }
        })
        .collect()
}

/// Markdown table with one row per method: R-1/R-2/R-L as percentages,
/// L-Eval rescaled from the 0-10 expectation to a percentage.
pub fn rows_to_markdown(rows: &[AggregateRow]) -> String {
    let mut out = String::new();
    out.push_str("| Method | R-1 (%) | R-2 (%) | R-L (%) | L-Eval (%) |\n");
    out.push_str("|---|---|---|---|---|\n");
    for row in rows {
        let cell = |m: MeanStd, scale: f64| {
            if row.runs > 1 {
                format!("{:.1} ({:.1})", m.mean * scale, m.std * scale)
            } else {
                format!("{:.1}", m.mean * scale)
            }
        };
        let leval = row
            .l_eval
            .map(|m| cell(m, 10.0))
            .unwrap_or_else(|| "-".to_string());
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} |\n",
            row.label,
            cell(row.rouge1, 100.0),
            cell(row.rouge2, 100.0),
            cell(row.rouge_l, 100.0),
            leval
        ));
    }
    out
}

/// CSV of per-document rows for one report.
pub fn report_to_csv(report: &EvalReport) -> String {
    let mut out = String::from("doc_id,rouge1,rouge2,rouge_l,l_eval\n");
    for row in &report.rows {
        let le = row.l_eval.map(|v| format!("{v:.6}")).unwrap_or_default();
        out.push_str(&format!(
            "{},{:.6},{:.6},{:.6},{}\n",
            row.doc_id, row.rouge1, row.rouge2, row.rouge_l, le
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_texts_score_one() {
        for n in 1..=2 {
            let s = rouge_n("the cat sat on the mat", "the cat sat on the mat", n).unwrap();
            assert_eq!(s.precision, 1.0);
            assert_eq!(s.recall, 1.0);
            assert_eq!(s.f1, 1.0);
        }
        let s = rouge_l("the cat sat", "the cat sat").unwrap();
        assert_eq!(s.f1, 1.0);
    }

    #[test]
    fn disjoint_vocabulary_scores_zero() {
        let s = rouge_n("alpha beta gamma", "delta epsilon zeta", 1).unwrap();
        assert_eq!(s.f1, 0.0);
        let s = rouge_l("alpha beta", "delta epsilon").unwrap();
        assert_eq!(s.f1, 0.0);
    }

    #[test]
    fn empty_reference_is_an_error() {
        assert!(rouge_n("something", "  ", 1).is_err());
        assert!(rouge_l("something", "...").is_err());
    }

    #[test]
    fn tokenizer_strips_punctuation_and_case() {
        assert_eq!(tokenize("Hello, World! (really)"), vec!["hello", "world", "really"]);
    }

    #[test]
    fn reversed_distinct_tokens_have_lcs_one() {
        // candidate = reversed reference of 4 distinct tokens -> LCS length 1
        let s = rouge_l("d c b a", "a b c d").unwrap();
        assert!((s.precision - 0.25).abs() < 1e-12);
        assert!((s.recall - 0.25).abs() < 1e-12);
    }

    #[test]
    fn clipped_counts_limit_repeats() {
        // candidate repeats "a" 3 times, reference has it once -> overlap 1
        let s = rouge_n("a a a", "a b", 1).unwrap();
        assert!((s.precision - 1.0 / 3.0).abs() < 1e-12);
        assert!((s.recall - 0.5).abs() < 1e-12);
    }

    #[test]
    fn expectation_with_full_mass_on_seven() {
        let score = l_eval_from_alternatives(&[("7".into(), 1.0)]).unwrap();
        assert!((score.value - 7.0).abs() < 1e-12);
    }

    #[test]
    fn expectation_is_linear_in_mass() {
        let score = l_eval_from_alternatives(&[("8".into(), 0.5), ("6".into(), 0.5)]).unwrap();
        assert!((score.value - 7.0).abs() < 1e-12);
    }

    #[test]
    fn missing_mass_is_not_renormalized() {
        // 0.6 on "9" and 0.1 on "8"; the rest of the mass sits on non-integer
        // tokens and is dropped, leaving 0.6*9 + 0.1*8 = 6.2... check: 5.4+0.8
        let score =
            l_eval_from_alternatives(&[("9".into(), 0.6), ("8".into(), 0.1), ("ok".into(), 0.3)]).unwrap();
        assert!((score.value - 6.2).abs() < 1e-12);
    }

    #[test]
    fn no_integer_alternative_is_an_error() {
        let err = l_eval_from_alternatives(&[("great".into(), 0.9)]).unwrap_err();
        assert!(matches!(err, Error::UnparsableRating));
    }

    #[test]
    fn ten_is_accepted_as_single_token() {
        let score = l_eval_from_alternatives(&[("10".into(), 1.0)]).unwrap();
        assert!((score.value - 10.0).abs() < 1e-12);
    }

    #[test]
    fn out_of_scale_ratings_are_discarded() {
        let score = l_eval_from_alternatives(&[("0".into(), 0.5), ("42".into(), 0.2), ("3".into(), 0.3)]).unwrap();
        assert!((score.value - 0.9).abs() < 1e-12);
    }
}
