//! Assembly of the minimal presentation, its machine verification against
//! the word oracle, the six-strand simplification, and export formats.
//!
//! Generators are the essential crossing types. Each essential double
//! crossing type `J` contributes one relation: from its decreasing triple
//! `(alpha, k, l)` the two conjugating words `u` (for `[alpha, l]`) and `v`
//! (for `[alpha * tau_k, l]`) reach the same decreasing core `g2`, and the
//! relation states that `u * g1 * v^-1` commutes with `g2`, where `g1` is
//! the type of the crossing at `k`.

use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::perm::{
    all_permutations, count_essential_crossing_types_exhaustive,
    count_essential_double_types_exhaustive, enumerate_essential_crossing_types_with_limit,
    enumerate_essential_double_types_with_limit, CrossingType, DoubleCrossingType,
    GroupoidGenerator, Permutation, DEFAULT_MAX_N,
};
use crate::rewrite::{
    realize_generator, realize_groupoid_generator, realize_word, GeneratorSymbol, GeneratorWord,
    Rewriter,
};
use crate::Result;

/// One relation of the presentation, kept with its building blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    pub double_type: DoubleCrossingType,
    pub u: GeneratorWord,
    pub v: GeneratorWord,
    /// Symbol of the first projection of `double_type`.
    pub g1: GeneratorSymbol,
    /// Symbol of the second projection; the shared decreasing core.
    pub g2: GeneratorSymbol,
    /// The freely reduced commutator `(u g1 v^-1) g2 (u g1 v^-1)^-1 g2^-1`.
    pub word: GeneratorWord,
}

impl Relation {
    /// The conjugated generator `u * g1 * v^-1` that commutes with `g2`.
    pub fn conjugated_generator(&self) -> GeneratorWord {
        self.u
            .concat(&GeneratorWord::single(self.g1.clone(), 1))
            .concat(&self.v.inverted())
    }
}

/// Provenance carried alongside every presentation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    pub enumeration_order: String,
}

impl Metadata {
    pub fn current() -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            enumeration_order: "blockwise-lex-ascending-v1".to_string(),
        }
    }
}

/// A finite presentation of the pure group on `n` strands.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    pub n: usize,
    pub generators: Vec<GeneratorSymbol>,
    pub relations: Vec<Relation>,
    pub metadata: Metadata,
}

impl Presentation {
    pub fn generator_index(&self, symbol: &GeneratorSymbol) -> Option<usize> {
        self.generators.iter().position(|s| s == symbol)
    }
}

/// The labelling that lists the blocks of `j` each in decreasing order,
/// together with the two crossing positions.
pub fn decreasing_triple(j: &DoubleCrossingType) -> (Permutation, usize, usize) {
    let mut seq = Vec::with_capacity(j.n());
    for r in 1..=5 {
        seq.extend(j.block(r).iter().rev());
    }
    let k = j.block(1).len() + 1;
    let l = j.block(1).len() + j.block(3).len() + 3;
    (
        Permutation::new(seq).expect("blocks partition the labels"),
        k,
        l,
    )
}

/// Builds the relation of an essential double crossing type.
pub fn build_relation(rw: &Rewriter, j: &DoubleCrossingType) -> Result<Relation> {
    if !j.is_essential() {
        return Err(Error::NotEssentialDouble(j.name()));
    }
    let (alpha, k, l) = decreasing_triple(j);
    let (proj1, proj2) = j.projections();

    let (u, core_u, exp_u) = rw.decompose(&GroupoidGenerator::new(alpha.clone(), l)?)?;
    let (v, core_v, exp_v) = rw.decompose(&GroupoidGenerator::new(alpha.swap_adjacent(k)?, l)?)?;
    if core_u != core_v || exp_u != 1 || exp_v != 1 {
        return Err(Error::Internal(format!(
            "conjugations of {j} disagree: cores {core_u} / {core_v}, exponents {exp_u} / {exp_v}"
        )));
    }
    if *core_u.ty() != proj2 {
        return Err(Error::Internal(format!(
            "core of {j} is {core_u}, expected {}",
            proj2.name()
        )));
    }
    let g1 = GeneratorSymbol::new(proj1)?;
    let g2 = core_u;

    let z = u
        .concat(&GeneratorWord::single(g1.clone(), 1))
        .concat(&v.inverted());
    let word = z
        .concat(&GeneratorWord::single(g2.clone(), 1))
        .concat(&z.inverted())
        .concat(&GeneratorWord::single(g2.clone(), -1));
    Ok(Relation {
        double_type: j.clone(),
        u,
        v,
        g1,
        g2,
        word,
    })
}

/// Builds the full presentation for `n` strands.
pub fn build_presentation(n: usize) -> Result<Presentation> {
    build_presentation_with_limit(n, DEFAULT_MAX_N)
}

pub fn build_presentation_with_limit(n: usize, max_n: usize) -> Result<Presentation> {
    let generators = enumerate_essential_crossing_types_with_limit(n, max_n)?
        .into_iter()
        .map(GeneratorSymbol::new)
        .collect::<Result<Vec<_>>>()?;
    let rw = Rewriter::new();
    let relations = enumerate_essential_double_types_with_limit(n, max_n)?
        .iter()
        .map(|j| build_relation(&rw, j))
        .collect::<Result<Vec<_>>>()?;
    Ok(Presentation {
        n,
        generators,
        relations,
        metadata: Metadata::current(),
    })
}

/// Tuning knobs for the sampled parts of verification.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Sample size for the non-essential triviality check when `n >= 6`;
    /// below that the check is exhaustive.
    pub nonessential_samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            nonessential_samples: 1000,
        }
    }
}

/// Outcome of one verification check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn pass(name: &'static str, checked: usize) -> Self {
        Self {
            name,
            passed: true,
            checked,
            counterexample: None,
        }
    }

    fn fail(name: &'static str, checked: usize, counterexample: String) -> Self {
        Self {
            name,
            passed: false,
            checked,
            counterexample: Some(counterexample),
        }
    }
}

/// Machine-readable verification report; CI gates on `passed`.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs every check of the presentation against the word oracle:
/// relations realize to the identity braid, the pairing matrix between
/// essential types and their braids is the identity, non-essential
/// generators realize trivially, the conjugating words avoid both
/// projections, and the generator/relation counts match an independent
/// enumeration.
pub fn verify_presentation(p: &Presentation, opts: &VerifyOptions) -> VerificationReport {
    let checks = vec![
        check_relations_realize_to_identity(p),
        check_duality_matrix(p),
        check_nonessential_triviality(p.n, opts),
        check_uv_avoidance(p),
        check_counts(p),
    ];
    VerificationReport {
        n: p.n,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn check_relations_realize_to_identity(p: &Presentation) -> CheckResult {
    const NAME: &str = "relations_realize_to_identity";
    let failures: Vec<String> = p
        .relations
        .par_iter()
        .filter_map(|r| {
            let braid = match realize_word(p.n, &r.word) {
                Ok(b) => b,
                Err(e) => return Some(format!("{}: {e}", r.double_type)),
            };
            if braid.reduce().is_empty() {
                None
            } else {
                Some(format!(
                    "relation of {} does not realize to the identity braid",
                    r.double_type
                ))
            }
        })
        .collect();
    match failures.into_iter().next() {
        None => CheckResult::pass(NAME, p.relations.len()),
        Some(c) => CheckResult::fail(NAME, p.relations.len(), c),
    }
}

fn check_duality_matrix(p: &Presentation) -> CheckResult {
    const NAME: &str = "duality_matrix_is_identity";
    let censuses: Vec<_> = p
        .generators
        .par_iter()
        .map(|s| realize_generator(s.ty()).map(|b| b.census()))
        .collect();
    let mut checked = 0;
    for (col, census) in censuses.iter().enumerate() {
        let census = match census {
            Ok(c) => c,
            Err(e) => return CheckResult::fail(NAME, checked, e.to_string()),
        };
        for (row, symbol) in p.generators.iter().enumerate() {
            checked += 1;
            let expected = i64::from(row == col);
            let got = census.get(symbol.ty());
            if got != expected {
                return CheckResult::fail(
                    NAME,
                    checked,
                    format!(
                        "pairing of {} with the braid of {} is {got}, expected {expected}",
                        symbol, p.generators[col]
                    ),
                );
            }
        }
    }
    CheckResult::pass(NAME, checked)
}

fn check_nonessential_triviality(n: usize, opts: &VerifyOptions) -> CheckResult {
    const NAME: &str = "nonessential_generators_realize_trivially";
    let mut checked = 0;
    let mut verify = |g: &GroupoidGenerator| -> Option<String> {
        checked += 1;
        if realize_groupoid_generator(g).reduce().is_empty() {
            None
        } else {
            Some(format!("non-essential {g} realizes to a nontrivial braid"))
        }
    };
    if n <= 5 {
        for alpha in all_permutations(n) {
            for k in 1..n {
                let g = GroupoidGenerator::new(alpha.clone(), k).expect("k in range");
                if g.is_essential() {
                    continue;
                }
                if let Some(c) = verify(&g) {
                    return CheckResult::fail(NAME, checked, c);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut taken = 0;
        while taken < opts.nonessential_samples {
            let alpha = Permutation::random(n, &mut rng);
            let k = rng.gen_range(1..n);
            let g = GroupoidGenerator::new(alpha, k).expect("k in range");
            if g.is_essential() {
                continue;
            }
            taken += 1;
            if let Some(c) = verify(&g) {
                return CheckResult::fail(NAME, checked, c);
            }
        }
    }
    CheckResult::pass(NAME, checked)
}

fn check_uv_avoidance(p: &Presentation) -> CheckResult {
    const NAME: &str = "conjugating_words_avoid_projections";
    let mut checked = 0;
    for r in &p.relations {
        checked += 1;
        for word in [&r.u, &r.v] {
            if word.contains(&r.g1) || word.contains(&r.g2) {
                return CheckResult::fail(
                    NAME,
                    checked,
                    format!(
                        "conjugating word of {} contains a projection symbol",
                        r.double_type
                    ),
                );
            }
        }
    }
    CheckResult::pass(NAME, checked)
}

fn check_counts(p: &Presentation) -> CheckResult {
    const NAME: &str = "counts_match_independent_enumeration";
    let expected_generators = count_essential_crossing_types_exhaustive(p.n);
    let expected_relations = count_essential_double_types_exhaustive(p.n);
    if p.generators.len() != expected_generators {
        return CheckResult::fail(
            NAME,
            2,
            format!(
                "{} generators, independent count {expected_generators}",
                p.generators.len()
            ),
        );
    }
    if p.relations.len() != expected_relations {
        return CheckResult::fail(
            NAME,
            2,
            format!(
                "{} relations, independent count {expected_relations}",
                p.relations.len()
            ),
        );
    }
    if (3..=6).contains(&p.n) {
        let known_generators = [1, 7, 31, 111][p.n - 3];
        let known_relations = [0, 0, 0, 20][p.n - 3];
        if p.generators.len() != known_generators || p.relations.len() != known_relations {
            return CheckResult::fail(
                NAME,
                2,
                format!(
                    "counts ({}, {}) differ from the known ranks ({known_generators}, {known_relations})",
                    p.generators.len(),
                    p.relations.len()
                ),
            );
        }
    }
    CheckResult::pass(NAME, 2)
}

/// A generator of the simplified six-strand presentation: either an original
/// crossing type or a replacement generator with its defining word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SimplifiedGenerator {
    Original(GeneratorSymbol),
    Replacement {
        label: String,
        /// Defining word in the original generators: `u * g1 * v^-1` of the
        /// relation this generator replaces.
        definition: GeneratorWord,
    },
}

impl SimplifiedGenerator {
    pub fn label(&self) -> String {
        match self {
            SimplifiedGenerator::Original(s) => s.to_string(),
            SimplifiedGenerator::Replacement { label, .. } => label.clone(),
        }
    }
}

/// The six-strand presentation after replacing one generator per relation,
/// leaving 20 commutators of distinct generator pairs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplifiedPresentation {
    pub n: usize,
    pub generators: Vec<SimplifiedGenerator>,
    /// Each relation states that the two indexed generators commute.
    pub relations: Vec<(usize, usize)>,
}

/// Witness of the free-product decomposition: which generators appear in no
/// relation and which pairs commute.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureCertificate {
    pub relation_free: Vec<usize>,
    pub commuting_pairs: Vec<(usize, usize)>,
}

impl StructureCertificate {
    pub fn describe(&self) -> String {
        format!(
            "free product of {} infinite cyclic groups and {} rank-2 free abelian groups",
            self.relation_free.len(),
            self.commuting_pairs.len()
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum GenRef {
    Original(usize),
    Fresh(usize),
}

fn push_ref(word: &mut Vec<(GenRef, i8)>, r: GenRef, e: i8) {
    match word.last() {
        Some(&(last, le)) if last == r && le == -e => {
            word.pop();
        }
        _ => word.push((r, e)),
    }
}

fn concat_refs(a: &[(GenRef, i8)], b: &[(GenRef, i8)]) -> Vec<(GenRef, i8)> {
    let mut out = a.to_vec();
    for &(r, e) in b {
        push_ref(&mut out, r, e);
    }
    out
}

fn invert_refs(a: &[(GenRef, i8)]) -> Vec<(GenRef, i8)> {
    a.iter().rev().map(|&(r, e)| (r, -e)).collect()
}

/// Replaces, per relation, the designated generator by the conjugated
/// generator `z = u * g1 * v^-1`: `z` is introduced with its defining
/// relation, the designated generator is solved for (it must occur exactly
/// once in the defining word), substituted everywhere, and removed. The
/// designated generator of a relation with blocks `J2 = {a1, a2}`,
/// `J3 = {a3}` is the type `a3<a2,a1>` when `a3 != 6` and `<a2,a1>`
/// otherwise.
pub fn simplify_n6(p: &Presentation) -> Result<(SimplifiedPresentation, StructureCertificate)> {
    if p.n != 6 {
        return Err(Error::Incompatible(format!(
            "simplification is implemented for 6 strands, got {}",
            p.n
        )));
    }

    // Designated generator per relation, as an index into p.generators.
    let mut designated: Vec<usize> = Vec::with_capacity(p.relations.len());
    for r in &p.relations {
        let j = &r.double_type;
        let (a1, a2) = (j.block(2)[0], j.block(2)[1]);
        let a3 = *j
            .block(3)
            .first()
            .ok_or_else(|| Error::Internal(format!("essential {j} with empty third block")))?;
        let i1: Vec<usize> = if a3 != 6 { vec![a3] } else { vec![] };
        let i2 = vec![a1, a2];
        let i3: Vec<usize> = (1..=6)
            .filter(|x| !i1.contains(x) && !i2.contains(x))
            .collect();
        let target = GeneratorSymbol::new(CrossingType::new(6, i1, i2, i3)?)?;
        let idx = p.generator_index(&target).ok_or_else(|| {
            Error::Internal(format!("designated generator {target} is not in the list"))
        })?;
        designated.push(idx);
    }

    {
        let mut sorted = designated.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != designated.len() {
            return Err(Error::Internal(
                "designated generators are not pairwise distinct".to_string(),
            ));
        }
    }
    for r in &p.relations {
        let g2_idx = p
            .generator_index(&r.g2)
            .ok_or_else(|| Error::Internal(format!("{} is not in the generator list", r.g2)))?;
        if designated.contains(&g2_idx) {
            return Err(Error::Internal(format!(
                "commutator partner {} was designated for elimination",
                r.g2
            )));
        }
    }

    // Defining words, kept current under the eliminations performed so far.
    let mut exprs: Vec<Vec<(GenRef, i8)>> = p
        .relations
        .iter()
        .map(|r| {
            r.conjugated_generator()
                .letters()
                .iter()
                .map(|(s, e)| {
                    let idx = p
                        .generator_index(s)
                        .expect("relation symbols are generators");
                    (GenRef::Original(idx), *e)
                })
                .collect()
        })
        .collect();

    for step in 0..exprs.len() {
        let d = GenRef::Original(designated[step]);
        let occurrences: Vec<usize> = exprs[step]
            .iter()
            .enumerate()
            .filter(|(_, &(r, _))| r == d)
            .map(|(i, _)| i)
            .collect();
        if occurrences.len() != 1 {
            return Err(Error::NotSolvable {
                generator: p.generators[designated[step]].to_string(),
                double_type: p.relations[step].double_type.name(),
                count: occurrences.len(),
            });
        }
        let at = occurrences[0];
        let exponent = exprs[step][at].1;
        let head = exprs[step][..at].to_vec();
        let tail = exprs[step][at + 1..].to_vec();
        // z = head * d^exponent * tail, solved for d.
        let fresh = vec![(GenRef::Fresh(step), 1i8)];
        let solved = if exponent == 1 {
            concat_refs(
                &concat_refs(&invert_refs(&head), &fresh),
                &invert_refs(&tail),
            )
        } else {
            concat_refs(&concat_refs(&tail, &invert_refs(&fresh)), &head)
        };
        for expr in exprs.iter_mut().skip(step + 1) {
            let mut updated: Vec<(GenRef, i8)> = Vec::with_capacity(expr.len());
            for &(r, e) in expr.iter() {
                if r == d {
                    let replacement = if e == 1 {
                        solved.clone()
                    } else {
                        invert_refs(&solved)
                    };
                    updated = concat_refs(&updated, &replacement);
                } else {
                    push_ref(&mut updated, r, e);
                }
            }
            *expr = updated;
        }
    }

    // Assemble the simplified generator list: originals minus the designated
    // ones, in enumeration order, then the replacement generators in
    // relation order.
    let mut generators = Vec::with_capacity(p.generators.len());
    let mut original_position = vec![usize::MAX; p.generators.len()];
    for (idx, symbol) in p.generators.iter().enumerate() {
        if !designated.contains(&idx) {
            original_position[idx] = generators.len();
            generators.push(SimplifiedGenerator::Original(symbol.clone()));
        }
    }
    let mut relations = Vec::with_capacity(p.relations.len());
    for (step, r) in p.relations.iter().enumerate() {
        let z_index = generators.len();
        generators.push(SimplifiedGenerator::Replacement {
            label: format!("z{}", step + 1),
            definition: r.conjugated_generator(),
        });
        let g2_idx = p.generator_index(&r.g2).expect("checked above");
        relations.push((z_index, original_position[g2_idx]));
    }

    let mut in_relation = vec![false; generators.len()];
    for &(a, b) in &relations {
        if a == b || in_relation[a] || in_relation[b] {
            return Err(Error::Internal(
                "commuting pairs are not disjoint".to_string(),
            ));
        }
        in_relation[a] = true;
        in_relation[b] = true;
    }
    let relation_free: Vec<usize> = (0..generators.len()).filter(|&i| !in_relation[i]).collect();

    let certificate = StructureCertificate {
        relation_free,
        commuting_pairs: relations.clone(),
    };
    Ok((
        SimplifiedPresentation {
            n: 6,
            generators,
            relations,
        },
        certificate,
    ))
}

/// Export formats for presentations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExportFormat {
    Plain,
    Json,
    Gap,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Self::Plain),
            "json" => Ok(Self::Json),
            "gap" => Ok(Self::Gap),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

fn descending(labels: &[usize]) -> Vec<usize> {
    labels.iter().rev().copied().collect()
}

fn gap_name(symbol: &GeneratorSymbol) -> String {
    let labels: Vec<String> = symbol
        .ty()
        .i1()
        .iter()
        .rev()
        .chain(symbol.ty().i2().iter().rev())
        .map(|x| x.to_string())
        .collect();
    format!("g{}", labels.join("_"))
}

#[derive(Serialize, Deserialize)]
struct LetterDto {
    gen: usize,
    exp: i8,
}

#[derive(Serialize, Deserialize)]
struct GenDto {
    id: usize,
    #[serde(rename = "I1")]
    i1: Vec<usize>,
    #[serde(rename = "I2")]
    i2: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct DoubleDto {
    #[serde(rename = "J1")]
    j1: Vec<usize>,
    #[serde(rename = "J2")]
    j2: Vec<usize>,
    #[serde(rename = "J3")]
    j3: Vec<usize>,
    #[serde(rename = "J4")]
    j4: Vec<usize>,
    #[serde(rename = "J5")]
    j5: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RelationDto {
    #[serde(rename = "J")]
    j: DoubleDto,
    u: Vec<LetterDto>,
    v: Vec<LetterDto>,
    g1: usize,
    g2: usize,
    word: Vec<LetterDto>,
}

#[derive(Serialize, Deserialize)]
struct PresentationDto {
    n: usize,
    generators: Vec<GenDto>,
    relations: Vec<RelationDto>,
    metadata: Metadata,
}

fn word_to_dto(p: &Presentation, word: &GeneratorWord) -> Vec<LetterDto> {
    word.letters()
        .iter()
        .map(|(s, e)| LetterDto {
            gen: p.generator_index(s).expect("word symbols are generators"),
            exp: *e,
        })
        .collect()
}

/// Deterministic serialization of a presentation.
pub fn export(p: &Presentation, format: ExportFormat) -> String {
    match format {
        ExportFormat::Plain => export_plain(p),
        ExportFormat::Json => export_json(p),
        ExportFormat::Gap => export_gap(p),
    }
}

fn export_plain(p: &Presentation) -> String {
    let names: Vec<String> = p.generators.iter().map(|s| s.to_string()).collect();
    let mut out = format!("generators: {}", names.join(" "));
    if p.relations.is_empty() {
        out.push_str("\nrelations: (none)");
    } else {
        out.push_str("\nrelations:");
        for r in &p.relations {
            let _ = write!(out, "\n{}", r.word);
        }
    }
    out
}

fn export_json(p: &Presentation) -> String {
    let dto = PresentationDto {
        n: p.n,
        generators: p
            .generators
            .iter()
            .enumerate()
            .map(|(id, s)| GenDto {
                id,
                i1: descending(s.ty().i1()),
                i2: descending(s.ty().i2()),
            })
            .collect(),
        relations: p
            .relations
            .iter()
            .map(|r| RelationDto {
                j: DoubleDto {
                    j1: descending(r.double_type.block(1)),
                    j2: descending(r.double_type.block(2)),
                    j3: descending(r.double_type.block(3)),
                    j4: descending(r.double_type.block(4)),
                    j5: descending(r.double_type.block(5)),
                },
                u: word_to_dto(p, &r.u),
                v: word_to_dto(p, &r.v),
                g1: p.generator_index(&r.g1).expect("g1 is a generator"),
                g2: p.generator_index(&r.g2).expect("g2 is a generator"),
                word: word_to_dto(p, &r.word),
            })
            .collect(),
        metadata: p.metadata.clone(),
    };
    serde_json::to_string_pretty(&dto).expect("presentation serializes")
}

fn export_gap(p: &Presentation) -> String {
    let names: Vec<String> = p.generators.iter().map(gap_name).collect();
    let quoted: Vec<String> = names.iter().map(|s| format!("\"{s}\"")).collect();
    let mut out = String::new();
    let _ = writeln!(out, "# pure twin group on {} strands", p.n);
    let _ = writeln!(out, "F := FreeGroup( {} );;", quoted.join(", "));
    let _ = writeln!(out, "rels := [");
    for (i, r) in p.relations.iter().enumerate() {
        let word: Vec<String> = r
            .word
            .letters()
            .iter()
            .map(|(s, e)| {
                let idx = p.generator_index(s).expect("word symbols are generators") + 1;
                if *e == 1 {
                    format!("F.{idx}")
                } else {
                    format!("F.{idx}^-1")
                }
            })
            .collect();
        let sep = if i + 1 == p.relations.len() { "" } else { "," };
        let _ = writeln!(out, "  {}{sep}", word.join("*"));
    }
    let _ = writeln!(out, "];;");
    let _ = write!(out, "G := F / rels;;");
    out
}

/// Parses a presentation back from its JSON export.
pub fn parse_json(input: &str) -> Result<Presentation> {
    let dto: PresentationDto = serde_json::from_str(input).map_err(|e| Error::Parse {
        input: input.chars().take(80).collect(),
        what: "presentation JSON",
        reason: e.to_string(),
    })?;
    let n = dto.n;
    let mut generators = Vec::with_capacity(dto.generators.len());
    for (pos, g) in dto.generators.iter().enumerate() {
        if g.id != pos {
            return Err(Error::Parse {
                input: String::new(),
                what: "presentation JSON",
                reason: format!("generator ids must be dense, found {} at {pos}", g.id),
            });
        }
        let used: Vec<usize> = g.i1.iter().chain(g.i2.iter()).copied().collect();
        let i3: Vec<usize> = (1..=n).filter(|x| !used.contains(x)).collect();
        generators.push(GeneratorSymbol::new(CrossingType::new(
            n,
            g.i1.clone(),
            g.i2.clone(),
            i3,
        )?)?);
    }
    let word_from_dto = |letters: &[LetterDto]| -> Result<GeneratorWord> {
        let mut out = GeneratorWord::empty();
        for l in letters {
            let symbol = generators.get(l.gen).ok_or_else(|| Error::Parse {
                input: String::new(),
                what: "presentation JSON",
                reason: format!("generator id {} out of range", l.gen),
            })?;
            if l.exp != 1 && l.exp != -1 {
                return Err(Error::Parse {
                    input: String::new(),
                    what: "presentation JSON",
                    reason: format!("exponent {} is not ±1", l.exp),
                });
            }
            out.push(symbol.clone(), l.exp);
        }
        Ok(out)
    };
    let mut relations = Vec::with_capacity(dto.relations.len());
    for r in &dto.relations {
        let double_type = DoubleCrossingType::new(
            n,
            [
                r.j.j1.clone(),
                r.j.j2.clone(),
                r.j.j3.clone(),
                r.j.j4.clone(),
                r.j.j5.clone(),
            ],
        )?;
        let get = |idx: usize| -> Result<GeneratorSymbol> {
            generators.get(idx).cloned().ok_or_else(|| Error::Parse {
                input: String::new(),
                what: "presentation JSON",
                reason: format!("generator id {idx} out of range"),
            })
        };
        relations.push(Relation {
            double_type,
            u: word_from_dto(&r.u)?,
            v: word_from_dto(&r.v)?,
            g1: get(r.g1)?,
            g2: get(r.g2)?,
            word: word_from_dto(&r.word)?,
        });
    }
    Ok(Presentation {
        n,
        generators,
        relations,
        metadata: dto.metadata,
    })
}

/// Deterministic serialization of the simplified presentation and its
/// certificate.
pub fn export_simplified(
    sp: &SimplifiedPresentation,
    cert: &StructureCertificate,
    format: ExportFormat,
) -> String {
    match format {
        ExportFormat::Plain => {
            let names: Vec<String> = sp.generators.iter().map(|g| g.label()).collect();
            let mut out = format!("generators: {}", names.join(" "));
            out.push_str("\nrelations:");
            for &(a, b) in &sp.relations {
                let _ = write!(out, "\n[{}, {}]", names[a], names[b]);
            }
            out.push_str("\ndefinitions:");
            for g in &sp.generators {
                if let SimplifiedGenerator::Replacement { label, definition } = g {
                    let _ = write!(out, "\n{label} = {definition}");
                }
            }
            let _ = write!(out, "\ncertificate: {}", cert.describe());
            out
        }
        ExportFormat::Json => {
            #[derive(Serialize)]
            #[serde(tag = "kind", rename_all = "lowercase")]
            enum SimpGenDto {
                Original {
                    #[serde(rename = "I1")]
                    i1: Vec<usize>,
                    #[serde(rename = "I2")]
                    i2: Vec<usize>,
                },
                Replacement {
                    label: String,
                    definition: Vec<SimpLetterDto>,
                },
            }
            #[derive(Serialize)]
            struct SimpLetterDto {
                #[serde(rename = "I1")]
                i1: Vec<usize>,
                #[serde(rename = "I2")]
                i2: Vec<usize>,
                exp: i8,
            }
            #[derive(Serialize)]
            struct SimpDto<'a> {
                n: usize,
                generators: Vec<SimpGenDto>,
                relations: &'a [(usize, usize)],
                certificate: CertDto<'a>,
            }
            #[derive(Serialize)]
            struct CertDto<'a> {
                relation_free: &'a [usize],
                commuting_pairs: &'a [(usize, usize)],
            }
            let generators = sp
                .generators
                .iter()
                .map(|g| match g {
                    SimplifiedGenerator::Original(s) => SimpGenDto::Original {
                        i1: descending(s.ty().i1()),
                        i2: descending(s.ty().i2()),
                    },
                    SimplifiedGenerator::Replacement { label, definition } => {
                        SimpGenDto::Replacement {
                            label: label.clone(),
                            definition: definition
                                .letters()
                                .iter()
                                .map(|(s, e)| SimpLetterDto {
                                    i1: descending(s.ty().i1()),
                                    i2: descending(s.ty().i2()),
                                    exp: *e,
                                })
                                .collect(),
                        }
                    }
                })
                .collect();
            let dto = SimpDto {
                n: sp.n,
                generators,
                relations: &sp.relations,
                certificate: CertDto {
                    relation_free: &cert.relation_free,
                    commuting_pairs: &cert.commuting_pairs,
                },
            };
            serde_json::to_string_pretty(&dto).expect("simplified presentation serializes")
        }
        ExportFormat::Gap => {
            let names: Vec<String> = sp
                .generators
                .iter()
                .map(|g| match g {
                    SimplifiedGenerator::Original(s) => gap_name(s),
                    SimplifiedGenerator::Replacement { label, .. } => label.clone(),
                })
                .collect();
            let quoted: Vec<String> = names.iter().map(|s| format!("\"{s}\"")).collect();
            let mut out = String::new();
            let _ = writeln!(out, "# simplified pure twin group on {} strands", sp.n);
            let _ = writeln!(out, "F := FreeGroup( {} );;", quoted.join(", "));
            let _ = writeln!(out, "rels := [");
            for (i, &(a, b)) in sp.relations.iter().enumerate() {
                let sep = if i + 1 == sp.relations.len() { "" } else { "," };
                let _ = writeln!(
                    out,
                    "  F.{}*F.{}*F.{}^-1*F.{}^-1{sep}",
                    a + 1,
                    b + 1,
                    a + 1,
                    b + 1
                );
            }
            let _ = writeln!(out, "];;");
            let _ = write!(out, "G := F / rels;;");
            out
        }
    }
}
