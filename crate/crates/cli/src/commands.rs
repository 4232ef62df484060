//! The `analyze`, `compare`, and `batch` subcommands as library functions,
//! plus the shared knobs (game choice, state-cap resolution). Each command
//! returns its stdout text together with structured results, so tests can
//! assert byte-identical output in-process. File outputs are written here.

use crate::dot::export_dot;
use crate::error::CliError;
use crate::play::{run_play, Opponent, PlayOutcome};
use crate::report::{build_report, export_json_many, star, AnalysisReport, NodeReport};
use crate::textspec::parse_group_spec;
use gengame_core::{
    build_digraph, build_group, bruteforce_nim, classify_position, compute_types,
    enumerate_labeled_positions, frattini, game_nim_value, intersection_family, simplify_digraph,
    FiniteGroup, GameKind, GroupSpec, OracleConfig, OracleError, StructureDigraph,
    DEFAULT_MAX_STATES,
};
use serde::Serialize;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameChoice {
    Dng,
    Gen,
    Both,
}

impl GameChoice {
    pub fn games(self) -> &'static [GameKind] {
        match self {
            GameChoice::Dng => &[GameKind::Dng],
            GameChoice::Gen => &[GameKind::Gen],
            GameChoice::Both => &[GameKind::Dng, GameKind::Gen],
        }
    }
}

/// Environment variable overriding the default oracle state cap. An explicit
/// `--max-states` flag beats it; the built-in default is the fallback.
pub const MAX_STATES_ENV: &str = "GENGAME_MAX_STATES";

pub fn effective_max_states(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(MAX_STATES_ENV) {
        Ok(v) => v.trim().parse::<u64>().map_err(|_| {
            CliError::Usage(format!(
                "{MAX_STATES_ENV} must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_STATES),
        Err(e) => Err(CliError::Usage(format!("{MAX_STATES_ENV}: {e}"))),
    }
}

fn parse_spec_or_usage(text: &str) -> Result<GroupSpec, CliError> {
    let spec = parse_group_spec(text).map_err(|e| CliError::Usage(e.to_string()))?;
    resolve_table_files(spec)
}

/// A `file:` spec carries the file's *path*; the group builder wants the
/// file's *contents*. Reading failures count as group-validation errors, not
/// usage errors: the spec text itself was fine.
fn resolve_table_files(spec: GroupSpec) -> Result<GroupSpec, CliError> {
    match spec {
        GroupSpec::Table(path) => match std::fs::read_to_string(&path) {
            Ok(text) => Ok(GroupSpec::Table(text)),
            Err(e) => Err(CliError::Validation(format!("cannot read table file {path}: {e}"))),
        },
        GroupSpec::Product(a, b) => Ok(GroupSpec::Product(
            Box::new(resolve_table_files(*a)?),
            Box::new(resolve_table_files(*b)?),
        )),
        other => Ok(other),
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct AnalyzeOutcome {
    pub text: String,
    pub reports: Vec<AnalysisReport>,
    /// DOT text, when `--dot` was given (single game only).
    pub dot: Option<String>,
    /// JSON text, when `--json` was given.
    pub json: Option<String>,
}

struct GameAnalysis {
    report: AnalysisReport,
    digraphs: Option<(StructureDigraph, StructureDigraph)>,
}

fn analyze_game(g: &FiniteGroup, game: GameKind) -> Result<GameAnalysis, CliError> {
    if g.order() == 1 {
        let nim = game_nim_value(g, game)?;
        return Ok(GameAnalysis {
            report: build_report(g, None, game, nim, None, None),
            digraphs: None,
        });
    }
    let fam = intersection_family(g)?;
    let d = compute_types(build_digraph(g, &fam, game)?);
    let s = simplify_digraph(&d);
    let report = build_report(g, Some(&fam), game, d.nim_value(), Some((&d, &s)), None);
    Ok(GameAnalysis { report, digraphs: Some((d, s)) })
}

fn render_node_lines(out: &mut String, nodes: &[NodeReport]) {
    for n in nodes {
        let opts = if n.options.is_empty() {
            "[]".to_string()
        } else {
            format!(
                "[{}]",
                n.options.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", ")
            )
        };
        let _ = writeln!(
            out,
            "  #{} |I|={} pty={} (a,b)=({},{}) {} -> {}",
            n.id, n.subgroup_order, n.parity, n.type_[1], n.type_[2], n.kind, opts
        );
    }
}

fn render_analysis_text(reports: &[AnalysisReport], simplified: bool) -> String {
    let mut out = String::new();
    let group = &reports[0].group;
    let orders = group
        .maximal_subgroup_orders
        .iter()
        .map(|o| o.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    let _ = writeln!(
        out,
        "Group {}: order {}, Frattini subgroup order {}, maximal subgroup orders [{}]",
        group.name, group.order, group.frattini_order, orders
    );
    for report in reports {
        let _ = writeln!(out);
        let _ = writeln!(out, "== {} on {} ==", report.game.to_uppercase(), group.name);
        if report.trivial_group {
            let _ = writeln!(out, "trivial group: solved by direct play (no structure digraph)");
            let _ = writeln!(out, "nim-value: {}", star(report.nim));
            continue;
        }
        let _ = writeln!(out, "nim-value: {}", star(report.nim));
        let edges: usize = report.nodes.iter().map(|n| n.options.len()).sum();
        let sedges: usize = report.simplified_nodes.iter().map(|n| n.options.len()).sum();
        let _ = writeln!(
            out,
            "structure digraph: {} classes, {} edges (simplified: {} classes, {} edges)",
            report.nodes.len(),
            edges,
            report.simplified_nodes.len(),
            sedges
        );
        let _ = writeln!(out, "classes:");
        render_node_lines(&mut out, &report.nodes);
        if simplified {
            let _ = writeln!(out, "simplified classes:");
            render_node_lines(&mut out, &report.simplified_nodes);
        }
    }
    out
}

pub fn cmd_analyze(
    spec_text: &str,
    game: GameChoice,
    dot_path: Option<&Path>,
    json_path: Option<&Path>,
    simplified: bool,
) -> Result<AnalyzeOutcome, CliError> {
    let spec = parse_spec_or_usage(spec_text)?;
    if dot_path.is_some() && game == GameChoice::Both {
        return Err(CliError::Usage(
            "--dot exports a single digraph; pass --game dng or --game gen".into(),
        ));
    }
    let g = build_group(&spec)?;
    let mut analyses = Vec::new();
    for &gk in game.games() {
        analyses.push(analyze_game(&g, gk)?);
    }
    let reports: Vec<AnalysisReport> = analyses.iter().map(|a| a.report.clone()).collect();
    let text = render_analysis_text(&reports, simplified);

    let dot = match dot_path {
        Some(path) => match &analyses[0].digraphs {
            Some((d, s)) => {
                let rendered = export_dot(if simplified { s } else { d });
                write_file(path, &rendered)?;
                Some(rendered)
            }
            None => {
                return Err(CliError::Validation(
                    "the trivial group has no structure digraph to export".into(),
                ))
            }
        },
        None => None,
    };
    let json = match json_path {
        Some(path) => {
            let rendered = export_json_many(&reports);
            write_file(path, &rendered)?;
            Some(rendered)
        }
        None => None,
    };
    Ok(AnalyzeOutcome { text, reports, dot, json })
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BucketCmp {
    /// The class value the structure method assigns this parity bucket.
    pub structure: u32,
    /// The oracle's (uniform) value over the bucket, if any position fell in it.
    pub oracle: Option<u32>,
    pub positions: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRow {
    pub node_id: usize,
    pub subgroup_order: usize,
    pub even: BucketCmp,
    pub odd: BucketCmp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameVerdict {
    Agree,
    Disagree,
    Unverified,
}

#[derive(Clone, Debug)]
pub struct CompareGame {
    pub game: GameKind,
    pub structure_nim: u32,
    pub oracle_nim: Option<u32>,
    pub positions_explored: usize,
    pub rows: Vec<ClassRow>,
    pub verdict: GameVerdict,
}

#[derive(Debug)]
pub struct CompareOutcome {
    pub text: String,
    pub games: Vec<CompareGame>,
    pub exit: i32,
}

fn bucket_label(b: &BucketCmp) -> String {
    match b.oracle {
        Some(v) => format!(
            "oracle={v} ({} pos) {}",
            b.positions,
            if b.matches { "ok" } else { "MISMATCH" }
        ),
        None => "oracle=- (0 pos)".to_string(),
    }
}

fn compare_game(g: &FiniteGroup, game: GameKind, cap: u64) -> Result<CompareGame, CliError> {
    if g.order() == 1 {
        let structure_nim = game_nim_value(g, game)?;
        let mut cfg = OracleConfig::with_max_states(cap);
        let oracle_nim = bruteforce_nim(g, game, &mut cfg)?;
        let verdict =
            if oracle_nim == structure_nim { GameVerdict::Agree } else { GameVerdict::Disagree };
        return Ok(CompareGame {
            game,
            structure_nim,
            oracle_nim: Some(oracle_nim),
            positions_explored: 1,
            rows: Vec::new(),
            verdict,
        });
    }
    let fam = intersection_family(g)?;
    let d = compute_types(build_digraph(g, &fam, game)?);
    let structure_nim = d.nim_value();
    let mut cfg = OracleConfig::with_max_states(cap);
    let table = match enumerate_labeled_positions(g, game, &mut cfg) {
        Ok(table) => table,
        Err(OracleError::StateCapExceeded { .. }) => {
            return Ok(CompareGame {
                game,
                structure_nim,
                oracle_nim: None,
                positions_explored: 0,
                rows: Vec::new(),
                verdict: GameVerdict::Unverified,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let oracle_nim = bruteforce_nim(g, game, &mut cfg)?;
    // Bucket every explored position by (structure class, size parity); each
    // bucket must be uniform and equal to the class's a (even) or b (odd).
    let mut buckets: Vec<[Option<(u32, usize, bool)>; 2]> = vec![[None, None]; fam.len()];
    for (pos, value) in &table {
        let id = classify_position(g, &fam, game, pos)?;
        let slot = &mut buckets[id][(pos.len() % 2) as usize];
        match slot {
            None => *slot = Some((*value, 1, true)),
            Some((v, count, uniform)) => {
                *count += 1;
                if *v != *value {
                    *uniform = false;
                }
            }
        }
    }
    let mut rows = Vec::with_capacity(fam.len());
    let mut all_match = true;
    for id in 0..fam.len() {
        let triple = d.node(id).triple;
        let mk = |structure: u32, slot: Option<(u32, usize, bool)>| -> BucketCmp {
            let (oracle, positions, matches) = match slot {
                None => (None, 0, true),
                Some((v, count, uniform)) => (Some(v), count, uniform && v == structure),
            };
            BucketCmp { structure, oracle, positions, matches }
        };
        let even = mk(triple.a, buckets[id][0]);
        let odd = mk(triple.b, buckets[id][1]);
        all_match &= even.matches && odd.matches;
        rows.push(ClassRow {
            node_id: id,
            subgroup_order: d.node(id).subgroup_order,
            even,
            odd,
        });
    }
    let verdict = if all_match && oracle_nim == structure_nim {
        GameVerdict::Agree
    } else {
        GameVerdict::Disagree
    };
    Ok(CompareGame {
        game,
        structure_nim,
        oracle_nim: Some(oracle_nim),
        positions_explored: table.len(),
        rows,
        verdict,
    })
}

pub fn cmd_compare(
    spec_text: &str,
    game: GameChoice,
    max_states: Option<u64>,
) -> Result<CompareOutcome, CliError> {
    let spec = parse_spec_or_usage(spec_text)?;
    let g = build_group(&spec)?;
    let cap = effective_max_states(max_states)?;
    let mut games = Vec::new();
    let mut text = String::new();
    let _ = writeln!(text, "Group {}: order {}", g.name(), g.order());
    for &gk in game.games() {
        let result = compare_game(&g, gk, cap)?;
        let _ = writeln!(text);
        let _ = writeln!(text, "== {} on {} ==", gk, g.name());
        let _ = writeln!(text, "structure nim-value: {}", star(result.structure_nim));
        match result.oracle_nim {
            Some(nim) => {
                let _ = writeln!(
                    text,
                    "oracle nim-value:    {} ({} positions explored)",
                    star(nim),
                    result.positions_explored
                );
            }
            None => {
                let _ = writeln!(
                    text,
                    "oracle nim-value:    UNVERIFIED (state bound exceeds the cap of {cap} \
                     states; raise --max-states or {MAX_STATES_ENV})"
                );
            }
        }
        if !result.rows.is_empty() {
            let _ = writeln!(text, "per-class comparison (even sizes use a, odd sizes use b):");
            for row in &result.rows {
                let _ = writeln!(
                    text,
                    "  class #{} |I|={}: even a={} {} | odd b={} {}",
                    row.node_id,
                    row.subgroup_order,
                    row.even.structure,
                    bucket_label(&row.even),
                    row.odd.structure,
                    bucket_label(&row.odd)
                );
            }
        }
        let _ = writeln!(
            text,
            "verdict: {}",
            match result.verdict {
                GameVerdict::Agree => "AGREE",
                GameVerdict::Disagree => "DISAGREE",
                GameVerdict::Unverified => "UNVERIFIED",
            }
        );
        games.push(result);
    }
    let exit = if games.iter().all(|r| r.verdict == GameVerdict::Agree) { 0 } else { 3 };
    Ok(CompareOutcome { text, games, exit })
}

// ---------------------------------------------------------------------------
// batch
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct BatchRow {
    pub name: String,
    pub order: usize,
    pub frattini_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dng: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gen: Option<u32>,
    pub law: String,
    pub mismatch: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug)]
pub struct BatchOutcome {
    pub text: String,
    pub rows: Vec<BatchRow>,
    pub json: String,
}

/// The standard small-group corpus (orders at most 12).
pub fn corpus_small_specs() -> Vec<GroupSpec> {
    let mut specs: Vec<GroupSpec> = (2..=12).map(GroupSpec::Cyclic).collect();
    specs.push(GroupSpec::Dihedral(3));
    specs.push(GroupSpec::Dihedral(4));
    specs.push(GroupSpec::Dihedral(5));
    specs.push(GroupSpec::Quaternion8);
    specs.push(GroupSpec::Product(Box::new(GroupSpec::Cyclic(2)), Box::new(GroupSpec::Cyclic(2))));
    specs.push(GroupSpec::Product(Box::new(GroupSpec::Cyclic(2)), Box::new(GroupSpec::Cyclic(4))));
    specs.push(GroupSpec::Product(Box::new(GroupSpec::Cyclic(3)), Box::new(GroupSpec::Cyclic(3))));
    specs
}

fn is_abelian(g: &FiniteGroup) -> bool {
    let n = g.order();
    (0..n).all(|i| (i..n).all(|j| g.mul(i, j) == g.mul(j, i)))
}

fn is_odd_prime(q: usize) -> bool {
    q >= 3 && q % 2 == 1 && (3..q).step_by(2).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Which classification predicts this row's values, and what it predicts.
/// Returns (law name, expected avoidance value, allowed achievement values).
fn law_for(
    g: &FiniteGroup,
    frobenius_p: Option<usize>,
    frattini_order: usize,
) -> (&'static str, Option<u32>, Option<Vec<u32>>) {
    let n = g.order();
    if let Some(p) = frobenius_p {
        let gen_expected = if (p - 1) % 4 == 0 { 0 } else { 1 };
        return ("frobenius-dichotomy", Some(0), Some(vec![gen_expected]));
    }
    if n % 2 == 1 && n > 1 {
        return ("odd-order", Some(1), Some(vec![1, 2]));
    }
    if n.is_power_of_two() && !is_abelian(g) {
        return ("nonabelian-two-group", Some(0), Some(vec![0]));
    }
    if !is_abelian(g) && n % 2 == 0 && is_odd_prime(n / 2) {
        return ("semidirect-2q", Some(3), Some(vec![3]));
    }
    if frattini_order % 2 == 0 {
        return ("even-frattini", Some(0), None);
    }
    ("structure", None, None)
}

fn batch_row(fallback_name: &str, spec: &GroupSpec, frobenius_p: Option<usize>, game: GameChoice) -> BatchRow {
    let error_row = |msg: String| BatchRow {
        name: fallback_name.to_string(),
        order: 0,
        frattini_order: 0,
        dng: None,
        gen: None,
        law: "-".to_string(),
        mismatch: false,
        error: Some(msg),
    };
    let g = match build_group(spec) {
        Ok(g) => g,
        Err(e) => return error_row(e.to_string()),
    };
    let frattini_order = match frattini(&g) {
        Ok(phi) => phi.len(),
        Err(e) => return error_row(e.to_string()),
    };
    let mut dng = None;
    let mut gen = None;
    for &gk in game.games() {
        match game_nim_value(&g, gk) {
            Ok(nim) => match gk {
                GameKind::Dng => dng = Some(nim),
                GameKind::Gen => gen = Some(nim),
            },
            Err(e) => return error_row(e.to_string()),
        }
    }
    let (law, dng_expected, gen_expected) = law_for(&g, frobenius_p, frattini_order);
    let mut mismatch = false;
    if let (Some(expected), Some(actual)) = (dng_expected, dng) {
        mismatch |= actual != expected;
    }
    if let (Some(allowed), Some(actual)) = (&gen_expected, gen) {
        mismatch |= !allowed.contains(&actual);
    }
    BatchRow {
        name: g.name().to_string(),
        order: g.order(),
        frattini_order,
        dng,
        gen,
        law: law.to_string(),
        mismatch,
        error: None,
    }
}

fn opt_star(v: Option<u32>) -> String {
    v.map(star).unwrap_or_else(|| "-".to_string())
}

pub fn cmd_batch(
    family: &str,
    p_list: Option<&str>,
    game: GameChoice,
    json_path: Option<&Path>,
) -> Result<BatchOutcome, CliError> {
    let jobs: Vec<(String, GroupSpec, Option<usize>)> = match family {
        "frobenius" => {
            let list = p_list.ok_or_else(|| {
                CliError::Usage("family 'frobenius' needs --p-list, e.g. --p-list 5,7,11".into())
            })?;
            let mut jobs = Vec::new();
            for token in list.split(',') {
                let p: usize = token.trim().parse().map_err(|_| {
                    CliError::Usage(format!("--p-list entries must be numbers, got {token:?}"))
                })?;
                jobs.push((format!("F{p}"), GroupSpec::Frobenius { p, r: None }, Some(p)));
            }
            if jobs.is_empty() {
                return Err(CliError::Usage("--p-list is empty".into()));
            }
            jobs
        }
        "corpus:small" => {
            if p_list.is_some() {
                return Err(CliError::Usage("--p-list only applies to the frobenius family".into()));
            }
            corpus_small_specs()
                .into_iter()
                .map(|spec| (format!("{spec:?}"), spec, None))
                .collect()
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown family {other:?} (expected 'frobenius' or 'corpus:small')"
            )))
        }
    };

    // Each row owns its group, lattice, digraphs, and memo; compute them in
    // parallel and assemble in input order.
    let rows: Vec<BatchRow> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(name, spec, fp)| scope.spawn(move || batch_row(name, spec, *fp, game)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("batch worker panicked")).collect()
    });

    let mut text = String::new();
    let _ = writeln!(
        text,
        "{:<10} {:>5} {:>4} {:>5} {:>5}  {:<22} {}",
        "group", "order", "|Φ|", "DNG", "GEN", "law", "mismatch"
    );
    for row in &rows {
        if let Some(err) = &row.error {
            let _ = writeln!(text, "{:<10} error: {err}", row.name);
            continue;
        }
        let _ = writeln!(
            text,
            "{:<10} {:>5} {:>4} {:>5} {:>5}  {:<22} {}",
            row.name,
            row.order,
            row.frattini_order,
            opt_star(row.dng),
            opt_star(row.gen),
            row.law,
            if row.mismatch { "YES" } else { "no" }
        );
    }
    let mut json = serde_json::to_string_pretty(&rows).expect("rows serialize");
    json.push('\n');
    if let Some(path) = json_path {
        write_file(path, &json)?;
    }
    Ok(BatchOutcome { text, rows, json })
}

// ---------------------------------------------------------------------------
// play
// ---------------------------------------------------------------------------

pub fn cmd_play<R: BufRead, W: Write>(
    spec_text: &str,
    game: GameKind,
    vs: Opponent,
    engine_first: bool,
    max_states: Option<u64>,
    input: &mut R,
    out: &mut W,
) -> Result<PlayOutcome, CliError> {
    let spec = parse_spec_or_usage(spec_text)?;
    let g = build_group(&spec)?;
    let cap = effective_max_states(max_states)?;
    run_play(&g, game, vs, engine_first, cap, input, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_is_byte_identical_across_runs() {
        let a = cmd_analyze("cyclic:6", GameChoice::Both, None, None, true).unwrap();
        let b = cmd_analyze("cyclic:6", GameChoice::Both, None, None, true).unwrap();
        assert_eq!(a.text, b.text);
        assert_eq!(a.reports, b.reports);
        assert!(a.text.contains("nim-value: *3"), "{}", a.text);
        assert!(a.text.contains("nim-value: *4"), "{}", a.text);
    }

    #[test]
    fn analyze_trivial_group_reports_directly() {
        let out = cmd_analyze("cyclic:1", GameChoice::Dng, None, None, false).unwrap();
        assert!(out.text.contains("trivial group"), "{}", out.text);
        assert!(out.text.contains("nim-value: *0"), "{}", out.text);
        assert!(out.reports[0].trivial_group);
    }

    #[test]
    fn analyze_rejects_dot_with_both_games() {
        let e = cmd_analyze("cyclic:6", GameChoice::Both, Some(Path::new("/tmp/x.dot")), None, false)
            .unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn analyze_bad_spec_is_usage_and_bad_group_is_validation() {
        let e = cmd_analyze("spiral:6", GameChoice::Dng, None, None, false).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        let e = cmd_analyze("frobenius:4", GameChoice::Dng, None, None, false).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn compare_agrees_on_z6_and_caps_out_on_f13() {
        let ok = cmd_compare("cyclic:6", GameChoice::Both, None).unwrap();
        assert_eq!(ok.exit, 0);
        assert!(ok.text.contains("verdict: AGREE"), "{}", ok.text);
        let capped = cmd_compare("frobenius:13", GameChoice::Dng, None).unwrap();
        assert_eq!(capped.exit, 3);
        assert!(capped.text.contains("UNVERIFIED"), "{}", capped.text);
        assert!(capped.text.contains("structure nim-value: *0"), "{}", capped.text);
    }

    #[test]
    fn compare_honors_an_explicit_state_cap() {
        // The avoidance game on Z12 fits in 80 states; a cap of 10 refuses it.
        let capped = cmd_compare("cyclic:12", GameChoice::Dng, Some(10)).unwrap();
        assert_eq!(capped.exit, 3);
        let ok = cmd_compare("cyclic:12", GameChoice::Dng, Some(100)).unwrap();
        assert_eq!(ok.exit, 0);
    }

    #[test]
    fn batch_frobenius_flags_the_achievement_mismatches_honestly() {
        let out = cmd_batch("frobenius", Some("5,7"), GameChoice::Both, None).unwrap();
        assert_eq!(out.rows.len(), 2);
        let f5 = &out.rows[0];
        assert_eq!(f5.name, "F5");
        assert_eq!(f5.dng, Some(0));
        assert_eq!(f5.gen, Some(1));
        assert_eq!(f5.law, "frobenius-dichotomy");
        assert!(f5.mismatch, "the dichotomy predicts *0 for F5 but both engines compute *1");
        let f7 = &out.rows[1];
        assert_eq!(f7.gen, Some(1));
        assert!(!f7.mismatch);
    }

    #[test]
    fn batch_corpus_small_has_no_mismatches() {
        let out = cmd_batch("corpus:small", None, GameChoice::Both, None).unwrap();
        assert_eq!(out.rows.len(), 18);
        for row in &out.rows {
            assert!(row.error.is_none(), "{}: {:?}", row.name, row.error);
            assert!(!row.mismatch, "{} flagged mismatch", row.name);
            assert!([0, 1, 3].contains(&row.dng.unwrap()), "{}", row.name);
        }
        // Spot-check the law column.
        let law_of = |name: &str| {
            out.rows.iter().find(|r| r.name == name).map(|r| r.law.clone()).unwrap()
        };
        assert_eq!(law_of("Z3"), "odd-order");
        assert_eq!(law_of("Q8"), "nonabelian-two-group");
        assert_eq!(law_of("D3"), "semidirect-2q");
        assert_eq!(law_of("Z4"), "even-frattini");
        assert_eq!(law_of("Z6"), "structure");
    }

    #[test]
    fn batch_usage_errors() {
        assert_eq!(cmd_batch("frobenius", None, GameChoice::Dng, None).unwrap_err().exit_code(), 1);
        assert_eq!(
            cmd_batch("frobenius", Some("5,x"), GameChoice::Dng, None).unwrap_err().exit_code(),
            1
        );
        assert_eq!(cmd_batch("corpus:big", None, GameChoice::Dng, None).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn batch_records_per_row_errors_and_continues() {
        let out = cmd_batch("frobenius", Some("4,5"), GameChoice::Dng, None).unwrap();
        assert_eq!(out.rows.len(), 2);
        assert!(out.rows[0].error.is_some(), "4 is not prime");
        assert!(out.rows[1].error.is_none());
        assert_eq!(out.rows[1].dng, Some(0));
        assert!(out.text.contains("error:"), "{}", out.text);
    }

    #[test]
    fn explicit_flag_beats_the_default_cap() {
        assert_eq!(effective_max_states(Some(42)).unwrap(), 42);
    }
}
