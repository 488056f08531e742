use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::json;
use x1_core::classify::{self, GaloisProfile};
use x1_core::curveinv::{self, FreyCertificate};
use x1_core::levels::{self, BoundInput};
use x1_core::matgroup::{goursat, GroupFile, MatGroup};
use x1_core::modarith::{factorize, gl2_order, Modulus};
use x1_core::orbits::{self, DegreeSpectrum};
use x1_core::sporadic::{self, CmOrder};
use x1_core::{Error, Residue};

use crate::output::{factorization, list, rat, Report, Table};
use crate::{GroupSource, StandardKind, TableKind};

/// Primes shown by `tables --which gl2`.
const GL2_TABLE_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 37];

pub struct Outcome {
    pub report: Report,
    /// `Some(false)` when a certificate was requested and not issued.
    pub issued: Option<bool>,
}

impl Outcome {
    fn plain(report: Report) -> Self {
        Self {
            report,
            issued: None,
        }
    }
}

/// Runs `$f::<T>(args)` with the narrowest residue word that holds `n`.
macro_rules! with_width {
    ($n:expr, $f:ident($($arg:expr),* $(,)?)) => {{
        let n: u64 = $n;
        if n <= u16::MAX as u64 {
            $f::<u16>($($arg),*)
        } else if n <= u32::MAX as u64 {
            $f::<u32>($($arg),*)
        } else {
            $f::<u64>($($arg),*)
        }
    }};
}

fn load_group_file(source: &GroupSource) -> Result<GroupFile> {
    if let Some(path) = &source.input {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read group file {}", path.display()))?;
        return GroupFile::from_json(&text)
            .with_context(|| format!("bad group file {}", path.display()));
    }
    let kind = source
        .standard
        .context("give --in FILE or --standard KIND")?;
    let n = source.modulus.context("--standard needs --modulus")?;
    Modulus::new(n)?;
    with_width!(n, standard_file(kind, n))
}

fn standard_file<T: Residue>(kind: StandardKind, n: u64) -> Result<GroupFile> {
    let g = match kind {
        StandardKind::Gl2 => MatGroup::<T>::gl2(n)?,
        StandardKind::Sl2 => MatGroup::<T>::sl2(n)?,
        StandardKind::Borel => MatGroup::<T>::borel(n)?,
        StandardKind::SplitCartan => MatGroup::<T>::split_cartan(n)?,
        StandardKind::Trivial => MatGroup::<T>::trivial(n)?,
    };
    Ok(g.to_file())
}

// group

#[derive(Serialize)]
struct ProjectionSummary {
    modulus: u64,
    order: u128,
    full_preimage: bool,
}

#[derive(Serialize)]
struct KernelSummary {
    modulus: u64,
    order: u128,
    generators: usize,
}

#[derive(Serialize)]
struct GoursatSummary {
    a: u64,
    b: u64,
    left_order: u128,
    right_order: u128,
    left_kernel_order: u128,
    right_kernel_order: u128,
    common_quotient_order: u128,
}

#[derive(Serialize)]
struct GroupSummary {
    modulus: u64,
    order: u128,
    gl2_order: u128,
    index: u128,
    contains_sl2: bool,
    generators: Vec<[u64; 4]>,
    projections: Vec<ProjectionSummary>,
    kernels: Vec<KernelSummary>,
    goursat: Option<GoursatSummary>,
}

pub fn group(
    source: &GroupSource,
    project: &[u64],
    kernel: &[u64],
    split: Option<u64>,
    emit_group: bool,
    cap: usize,
) -> Result<Outcome> {
    let file = load_group_file(source)?;
    if emit_group {
        let mut t = Table::new("generators", &["a", "b", "c", "d"]);
        for g in &file.generators {
            t.row(g.iter().map(|x| x.to_string()).collect());
        }
        return Ok(Outcome::plain(Report::new(&file, vec![t])?));
    }
    with_width!(
        file.modulus,
        group_summary(&file, project, kernel, split, cap)
    )
}

fn group_summary<T: Residue>(
    file: &GroupFile,
    project: &[u64],
    kernel: &[u64],
    split: Option<u64>,
    cap: usize,
) -> Result<Outcome> {
    let g = MatGroup::<T>::from_file(file)?;
    let n = g.n();
    let order = g.order(cap)?;
    let projections = project
        .iter()
        .map(|&m| {
            Ok(ProjectionSummary {
                modulus: m,
                order: g.project(m)?.order(cap)?,
                full_preimage: g.is_full_preimage(m, cap)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let kernels = kernel
        .iter()
        .map(|&m| {
            let k = g.kernel_of_projection(m, cap)?;
            Ok(KernelSummary {
                modulus: m,
                order: k.order(cap)?,
                generators: k.generators().len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let goursat = match split {
        None => None,
        Some(a) => {
            if a == 0 || n % a != 0 {
                bail!(Error::NotADivisor { m: a, n });
            }
            let d = goursat(&g, a, n / a, cap)?;
            Some(GoursatSummary {
                a,
                b: n / a,
                left_order: d.left.order(cap)?,
                right_order: d.right.order(cap)?,
                left_kernel_order: d.left_kernel.order(cap)?,
                right_kernel_order: d.right_kernel.order(cap)?,
                common_quotient_order: d.common_quotient_order,
            })
        }
    };
    let summary = GroupSummary {
        modulus: n,
        order,
        gl2_order: gl2_order(n),
        index: g.index_in_gl2(cap)?,
        contains_sl2: g.contains_sl2(cap)?,
        generators: g.generators().iter().map(|m| m.entries()).collect(),
        projections,
        kernels,
        goursat,
    };

    let mut tables = vec![Table::fields(
        "group",
        &[
            ("modulus", n.to_string()),
            ("order", summary.order.to_string()),
            ("gl2_order", summary.gl2_order.to_string()),
            ("index", summary.index.to_string()),
            ("contains_sl2", summary.contains_sl2.to_string()),
            ("generators", summary.generators.len().to_string()),
        ],
    )];
    if !summary.projections.is_empty() {
        let mut t = Table::new("projections", &["modulus", "order", "full_preimage"]);
        for p in &summary.projections {
            t.row(vec![
                p.modulus.to_string(),
                p.order.to_string(),
                p.full_preimage.to_string(),
            ]);
        }
        tables.push(t);
    }
    if !summary.kernels.is_empty() {
        let mut t = Table::new("kernels", &["modulus", "order", "generators"]);
        for k in &summary.kernels {
            t.row(vec![
                k.modulus.to_string(),
                k.order.to_string(),
                k.generators.to_string(),
            ]);
        }
        tables.push(t);
    }
    if let Some(d) = &summary.goursat {
        tables.push(Table::fields(
            "goursat",
            &[
                ("a", d.a.to_string()),
                ("b", d.b.to_string()),
                ("left_order", d.left_order.to_string()),
                ("right_order", d.right_order.to_string()),
                ("left_kernel_order", d.left_kernel_order.to_string()),
                ("right_kernel_order", d.right_kernel_order.to_string()),
                ("common_quotient_order", d.common_quotient_order.to_string()),
            ],
        ));
    }
    Ok(Outcome::plain(Report::new(&summary, tables)?))
}

// orbits and degrees

fn spectrum_table(s: &DegreeSpectrum) -> Table {
    let mut t = Table::new(
        "orbits",
        &[
            "representative",
            "size",
            "point_order",
            "minus_closed",
            "half",
            "degree",
        ],
    );
    for r in &s.records {
        t.row(vec![
            format!("({},{})", r.representative[0], r.representative[1]),
            r.size.to_string(),
            r.point_order.to_string(),
            r.minus_closed.to_string(),
            r.half.to_string(),
            r.degree.to_string(),
        ]);
    }
    t
}

pub fn orbits(
    source: &GroupSource,
    field_degree: u64,
    growth: Option<u64>,
    cap: usize,
) -> Result<Outcome> {
    let file = load_group_file(source)?;
    with_width!(file.modulus, orbits_for(&file, field_degree, growth, cap))
}

fn orbits_for<T: Residue>(
    file: &GroupFile,
    field_degree: u64,
    growth: Option<u64>,
    _cap: usize,
) -> Result<Outcome> {
    let g = MatGroup::<T>::from_file(file)?;
    let spectrum = orbits::degree_spectrum(&g, field_degree)?;
    let mut tables = vec![spectrum_table(&spectrum)];
    let growth = growth
        .map(|b| orbits::max_growth_check(&g, b))
        .transpose()?;
    if let Some(r) = &growth {
        let mut t = Table::new(
            "growth",
            &[
                "representative",
                "orbit_size",
                "image",
                "image_orbit_size",
                "ratio",
                "fiber_count",
                "maximal",
                "degree_multiplicative",
            ],
        );
        for row in &r.rows {
            t.row(vec![
                format!("({},{})", row.representative[0], row.representative[1]),
                row.orbit_size.to_string(),
                format!("({},{})", row.image[0], row.image[1]),
                row.image_orbit_size.to_string(),
                row.ratio.to_string(),
                row.fiber_count.to_string(),
                row.maximal.to_string(),
                row.degree_multiplicative.to_string(),
            ]);
        }
        tables.push(t);
    }
    let json = json!({
        "spectrum": spectrum,
        "growth": growth.as_ref().map(|r| json!({
            "report": r,
            "all_maximal": r.all_maximal(),
        })),
    });
    Ok(Outcome::plain(Report::new(&json, tables)?))
}

#[derive(Serialize)]
struct DegreeCount {
    degree: u64,
    count: usize,
}

pub fn degrees(
    source: &GroupSource,
    field_degree: u64,
    pushforward: Option<u64>,
    cap: usize,
) -> Result<Outcome> {
    let file = load_group_file(source)?;
    with_width!(
        file.modulus,
        degrees_for(&file, field_degree, pushforward, cap)
    )
}

fn degrees_for<T: Residue>(
    file: &GroupFile,
    field_degree: u64,
    pushforward: Option<u64>,
    _cap: usize,
) -> Result<Outcome> {
    let g = MatGroup::<T>::from_file(file)?;
    let n = g.n();
    let spectrum = orbits::degree_spectrum(&g, field_degree)?;
    let mut counts: Vec<DegreeCount> = Vec::new();
    for d in spectrum.degrees() {
        match counts.last_mut() {
            Some(c) if c.degree == d => c.count += 1,
            _ => counts.push(DegreeCount {
                degree: d,
                count: 1,
            }),
        }
    }
    let mut t = Table::new("degrees", &["degree", "count"]);
    for c in &counts {
        t.row(vec![c.degree.to_string(), c.count.to_string()]);
    }
    let mut tables = vec![t];
    tables.push(Table::fields(
        "totals",
        &[
            ("modulus", n.to_string()),
            ("field_degree", field_degree.to_string()),
            ("total_degree", spectrum.total_degree().to_string()),
            ("psl2_index", curveinv::psl2_index(n).to_string()),
        ],
    ));
    let push = match pushforward {
        None => None,
        Some(a) => {
            if a == 0 || n % a != 0 {
                bail!(Error::NotADivisor { m: a, n });
            }
            let lower = orbits::degree_spectrum(&g.project(a)?, field_degree)?;
            Some(sporadic::pushforward_degree_check(&spectrum, &lower)?)
        }
    };
    if let Some(r) = &push {
        let mut t = Table::new(
            "pushforward",
            &[
                "representative",
                "degree",
                "image",
                "image_degree",
                "sporadicity_transfers",
            ],
        );
        for row in &r.rows {
            t.row(vec![
                format!("({},{})", row.representative[0], row.representative[1]),
                row.degree.to_string(),
                format!("({},{})", row.image[0], row.image[1]),
                row.image_degree.to_string(),
                row.sporadicity_transfers.to_string(),
            ]);
        }
        tables.push(t);
    }
    let json = json!({
        "modulus": n,
        "field_degree": field_degree,
        "degrees": counts,
        "total_degree": spectrum.total_degree(),
        "psl2_index": curveinv::psl2_index(n),
        "pushforward": push,
    });
    Ok(Outcome::plain(Report::new(&json, tables)?))
}

// levels

fn parse_compose(text: &str) -> Result<Vec<(u64, u32)>> {
    text.split(',')
        .map(|item| {
            let (p, t) = item
                .split_once(':')
                .with_context(|| format!("level data item {item:?} is not of the form l:t"))?;
            Ok((
                p.trim()
                    .parse()
                    .with_context(|| format!("bad prime in {item:?}"))?,
                t.trim()
                    .parse()
                    .with_context(|| format!("bad exponent in {item:?}"))?,
            ))
        })
        .collect()
}

pub fn level(
    source: &GroupSource,
    stage: Option<u32>,
    compose: Option<&str>,
    cap: usize,
) -> Result<Outcome> {
    let file = load_group_file(source)?;
    let data = compose.map(parse_compose).transpose()?;
    with_width!(file.modulus, level_for(&file, stage, data.as_deref(), cap))
}

fn level_for<T: Residue>(
    file: &GroupFile,
    stage: Option<u32>,
    data: Option<&[(u64, u32)]>,
    cap: usize,
) -> Result<Outcome> {
    let g = MatGroup::<T>::from_file(file)?;
    if let Some(data) = data {
        if stage.is_some() {
            bail!("--stage and --compose are exclusive");
        }
        return match levels::compose_level(data, &g, cap) {
            Ok(cert) => {
                let minimized = levels::minimize_level(&g, cert.level, cap)?;
                let conditional = cert.evidence.iter().any(|e| !e.meets_s0);
                let mut t = Table::new(
                    "evidence",
                    &[
                        "prime",
                        "t",
                        "checked_modulus",
                        "base_modulus",
                        "order_checked",
                        "order_base",
                        "meets_s0",
                    ],
                );
                for e in &cert.evidence {
                    t.row(vec![
                        e.prime.to_string(),
                        e.t.to_string(),
                        e.checked_modulus.to_string(),
                        e.base_modulus.to_string(),
                        e.order_checked.to_string(),
                        e.order_base.to_string(),
                        e.meets_s0.to_string(),
                    ]);
                }
                let tables = vec![
                    Table::fields(
                        "level",
                        &[
                            ("certified", "true".into()),
                            ("level", cert.level.to_string()),
                            ("minimized_level", minimized.to_string()),
                            ("stage_modulus", cert.stage_modulus.to_string()),
                            ("conditional", conditional.to_string()),
                        ],
                    ),
                    t,
                ];
                let json = json!({
                    "certified": true,
                    "certificate": cert,
                    "minimized_level": minimized,
                    "conditional": conditional,
                });
                Ok(Outcome {
                    report: Report::new(&json, tables)?,
                    issued: Some(true),
                })
            }
            Err(Error::HypothesisFailed { prime }) => {
                let json = json!({
                    "certified": false,
                    "failed_prime": prime,
                });
                let tables = vec![Table::fields(
                    "level",
                    &[
                        ("certified", "false".into()),
                        ("failed_prime", prime.to_string()),
                    ],
                )];
                Ok(Outcome {
                    report: Report::new(&json, tables)?,
                    issued: Some(false),
                })
            }
            Err(e) => Err(e.into()),
        };
    }

    let (ell, k) = g
        .modulus()
        .prime_power()
        .with_context(|| format!("modulus {} is not a prime power; use --compose", g.n()))?;
    let s = match stage {
        Some(s) => s,
        None if k >= 1 => k - 1,
        None => bail!("modulus 1 has no stages"),
    };
    let det = levels::detect_ladic_level(&g, s, cap)?;
    let minimized = match det.level_divides {
        Some(m) => Some(levels::minimize_level(&g, m, cap)?),
        None => None,
    };
    let tables = vec![Table::fields(
        "level",
        &[
            ("prime", ell.to_string()),
            ("stage", s.to_string()),
            ("order_upper", det.order_upper.to_string()),
            ("order_lower", det.order_lower.to_string()),
            ("kernel_order", det.kernel_order.to_string()),
            ("full_kernel", det.full_kernel.to_string()),
            (
                "minimized_level",
                minimized.map_or_else(String::new, |m| m.to_string()),
            ),
        ],
    )];
    let json = json!({
        "certified": det.full_kernel,
        "detection": det,
        "minimized_level": minimized,
    });
    Ok(Outcome {
        issued: Some(det.full_kernel),
        report: Report::new(&json, tables)?,
    })
}

fn parse_assignments<V: std::str::FromStr>(items: &[String], what: &str) -> Result<Vec<(u64, V)>> {
    items
        .iter()
        .map(|item| {
            let (l, v) = item
                .split_once('=')
                .with_context(|| format!("{what} {item:?} is not of the form l=value"))?;
            let l = l
                .trim()
                .parse()
                .with_context(|| format!("bad prime in {item:?}"))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| anyhow::anyhow!("bad value in {item:?}"))?;
            Ok((l, v))
        })
        .collect()
}

#[derive(Serialize)]
struct BoundRow {
    prime: u64,
    single_level: u64,
    image_order: u128,
    tau: u32,
    tau_cap: u32,
    bound: u32,
}

pub fn level_bound(
    primes: &[u64],
    prime: Option<u64>,
    image_orders: &[String],
    taus: &[String],
    single_levels: &[String],
) -> Result<Outcome> {
    let mut input = BoundInput::new(primes)?;
    for (l, o) in parse_assignments::<u128>(image_orders, "--image-order")? {
        input = input.with_image_order(l, o)?;
    }
    for (l, m) in parse_assignments::<u64>(single_levels, "--single-level")? {
        input = input.with_single_level(l, m)?;
    }
    for (l, t) in parse_assignments::<u32>(taus, "--tau")? {
        input = input.with_tau(l, t)?;
    }
    let mut which: Vec<u64> = match prime {
        Some(p) => vec![p],
        None => primes.to_vec(),
    };
    which.sort_unstable();
    which.dedup();
    let rows = which
        .iter()
        .map(|&l| {
            Ok(BoundRow {
                prime: l,
                single_level: input.single_levels.get(&l).copied().unwrap_or(1),
                image_order: input.image_order(l),
                tau: input.tau_for(l)?,
                tau_cap: input.tau_cap(l)?,
                bound: levels::level_bound(&input, l)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(
        "level_bound",
        &[
            "prime",
            "single_level",
            "image_order",
            "tau",
            "tau_cap",
            "bound",
        ],
    );
    for r in &rows {
        t.row(vec![
            r.prime.to_string(),
            r.single_level.to_string(),
            r.image_order.to_string(),
            r.tau.to_string(),
            r.tau_cap.to_string(),
            r.bound.to_string(),
        ]);
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let json = json!({ "primes": sorted, "rows": rows });
    Ok(Outcome::plain(Report::new(&json, vec![t])?))
}

// curves and sporadic points

pub fn curve(n: u64) -> Result<Outcome> {
    Modulus::new(n)?;
    let c = curveinv::curve_invariants(n);
    let known = c.known_gonality.as_ref();
    let t = Table::fields(
        "curve",
        &[
            ("n", n.to_string()),
            ("psl2_index", c.psl2_index.to_string()),
            ("genus", c.genus.to_string()),
            ("cusps", c.cusps.to_string()),
            ("gonality_lower", rat(&c.gonality_lower)),
            (
                "known_gonality",
                known.map_or_else(String::new, |k| k.gonality.to_string()),
            ),
            (
                "gonality_source",
                known.map_or_else(String::new, |k| k.source.to_string()),
            ),
        ],
    );
    Ok(Outcome::plain(Report::new(&c, vec![t])?))
}

pub fn sporadic_check(level: u64, degree: u64, gonality: Option<u64>) -> Result<Outcome> {
    Modulus::new(level)?;
    if degree == 0 {
        bail!("degree must be positive");
    }
    let lifting = sporadic::lifting_certificate(level, degree);
    let (gon, source) = match (gonality, curveinv::known_gonality(level)) {
        (Some(g), _) => (Some(g), Some("given")),
        (None, Some(k)) => (Some(k.gonality), Some(k.source)),
        (None, None) => (None, None),
    };
    let frey: Option<FreyCertificate> = gon.map(|g| curveinv::frey_gonality_cert(level, degree, g));
    let issued = lifting.issued() || frey.as_ref().is_some_and(|f| f.issued);
    let t = Table::fields(
        "sporadic_check",
        &[
            ("level", level.to_string()),
            ("degree", degree.to_string()),
            ("index", lifting.index.to_string()),
            ("threshold", rat(&lifting.threshold)),
            ("margin", rat(&lifting.margin)),
            (
                "lifting_verdict",
                serde_json::to_value(lifting.verdict)?
                    .as_str()
                    .unwrap_or("")
                    .into(),
            ),
            ("gonality", gon.map_or_else(String::new, |g| g.to_string())),
            ("gonality_source", source.unwrap_or("").into()),
            (
                "frey_issued",
                frey.as_ref()
                    .map_or_else(String::new, |f| f.issued.to_string()),
            ),
        ],
    );
    let json = json!({
        "lifting": lifting,
        "lifting_issued": lifting.issued(),
        "frey": frey,
        "gonality_source": source,
        "issued": issued,
    });
    Ok(Outcome {
        report: Report::new(&json, vec![t])?,
        issued: Some(issued),
    })
}

pub fn cm(disc: i64, hw: Option<(u64, u64)>, ell: Option<u64>) -> Result<Outcome> {
    let order = match hw {
        Some((h, w)) => CmOrder::new(disc, h, w)?,
        None => CmOrder::from_table(disc)?,
    };
    let threshold = sporadic::cm_threshold(&order);
    let ell = ell.unwrap_or(threshold.smallest_split_prime);
    let point = sporadic::cm_point_degree(&order, ell)?;
    let issued = point.certificate.issued();
    let t = Table::fields(
        "cm",
        &[
            ("discriminant", disc.to_string()),
            ("class_number", order.class_number.to_string()),
            ("units", order.units.to_string()),
            ("threshold", rat(&threshold.threshold)),
            (
                "smallest_split_prime",
                threshold.smallest_split_prime.to_string(),
            ),
            ("ell", ell.to_string()),
            ("degree", point.degree.to_string()),
            ("lifting_threshold", rat(&point.certificate.threshold)),
            ("issued", issued.to_string()),
        ],
    );
    let json = json!({
        "threshold": threshold,
        "point": point,
        "issued": issued,
    });
    Ok(Outcome {
        report: Report::new(&json, vec![t])?,
        issued: Some(issued),
    })
}

pub fn classify(profile: &Path, n: u64, level: Option<u64>, assume_sz: bool) -> Result<Outcome> {
    let text = std::fs::read_to_string(profile)
        .with_context(|| format!("cannot read profile {}", profile.display()))?;
    let mut p = GaloisProfile::from_json(&text)
        .with_context(|| format!("bad profile {}", profile.display()))?;
    p.flags.assume_sz |= assume_sz;
    let verdict = classify::classify_profile(&p, n)?;
    let target = level.map(|m| classify::target_level(n, m)).transpose()?;

    let mut checks = Table::new("cases", &["case", "status", "reason"]);
    for c in &verdict.checks {
        checks.row(vec![
            c.case.to_string(),
            serde_json::to_value(c.status)?
                .as_str()
                .unwrap_or("")
                .into(),
            c.reason.clone(),
        ]);
    }
    let mut screens = Table::new("screens", &["name", "verdict", "conditional", "reason"]);
    for s in &verdict.screens {
        screens.row(vec![
            s.name.into(),
            serde_json::to_value(s.verdict)?
                .as_str()
                .unwrap_or("")
                .into(),
            s.conditional.to_string(),
            s.reason.clone(),
        ]);
    }
    let mut summary = vec![
        ("n", n.to_string()),
        (
            "case",
            verdict.case.map_or_else(String::new, |c| c.to_string()),
        ),
        ("possible_cases", list(&verdict.possible_cases)),
        ("s_set", list(&verdict.s_set)),
        ("p_values", list(&verdict.p_values)),
        ("candidates", list(&verdict.candidates)),
    ];
    if let Some(t) = &target {
        summary.push(("target", t.target.to_string()));
        summary.push(("map_degree", t.map.degree.to_string()));
    }
    let tables = vec![Table::fields("classification", &summary), checks, screens];
    let json = json!({
        "verdict": verdict,
        "target": target,
    });
    Ok(Outcome::plain(Report::new(&json, tables)?))
}

// tables

pub fn tables(which: TableKind) -> Result<Outcome> {
    let report = match which {
        TableKind::Classification => {
            let rows = levels::classification_table()?;
            let mut t = Table::new(
                "classification",
                &["p", "a", "b", "c", "p_power", "matches_reference"],
            );
            for r in &rows {
                t.row(vec![
                    r.p.to_string(),
                    r.a.to_string(),
                    r.b.to_string(),
                    r.c.map_or_else(String::new, |c| c.to_string()),
                    r.p_power.map_or_else(String::new, |q| q.to_string()),
                    r.matches_reference.to_string(),
                ]);
            }
            Report::new(&rows, vec![t])?
        }
        TableKind::Gl2 => {
            let rows: Vec<_> = GL2_TABLE_PRIMES
                .iter()
                .map(|&l| {
                    let order = gl2_order(l);
                    let f = factorize_u128(order);
                    json!({ "prime": l, "order": order, "factorization": factorization(&f) })
                })
                .collect();
            let mut t = Table::new("gl2", &["prime", "order", "factorization"]);
            for r in &rows {
                t.row(vec![
                    r["prime"].to_string(),
                    r["order"].to_string(),
                    r["factorization"].as_str().unwrap_or("").into(),
                ]);
            }
            Report::new(&rows, vec![t])?
        }
        TableKind::M1 => prime_value_table("m1", "level", classify::m1_table())?,
        TableKind::Sz => prime_value_table("sz", "level", classify::sz_table())?,
        TableKind::Gonality => {
            let rows: Vec<_> = curveinv::known_gonality_table()
                .into_iter()
                .map(|(n, k)| json!({ "n": n, "gonality": k.gonality, "source": k.source }))
                .collect();
            let mut t = Table::new("gonality", &["n", "gonality", "source"]);
            for r in &rows {
                t.row(vec![
                    r["n"].to_string(),
                    r["gonality"].to_string(),
                    r["source"].as_str().unwrap_or("").into(),
                ]);
            }
            Report::new(&rows, vec![t])?
        }
        TableKind::ClassNumbers => {
            let rows: Vec<_> = sporadic::CLASS_NUMBERS
                .iter()
                .map(|&(d, h, w)| json!({ "discriminant": d, "class_number": h, "units": w }))
                .collect();
            let mut t = Table::new("class_numbers", &["discriminant", "class_number", "units"]);
            for &(d, h, w) in sporadic::CLASS_NUMBERS {
                t.row(vec![d.to_string(), h.to_string(), w.to_string()]);
            }
            Report::new(&rows, vec![t])?
        }
    };
    Ok(Outcome::plain(report))
}

fn prime_value_table(title: &str, value: &str, rows: &[(u64, u64)]) -> Result<Report> {
    let json: Vec<_> = rows
        .iter()
        .map(|&(l, v)| json!({ "prime": l, value: v }))
        .collect();
    let mut t = Table::new(title, &["prime", value]);
    for &(l, v) in rows {
        t.row(vec![l.to_string(), v.to_string()]);
    }
    Report::new(&json, vec![t])
}

/// GL2 orders of small primes factor over primes below 2^32.
fn factorize_u128(x: u128) -> Vec<(u64, u32)> {
    match u64::try_from(x) {
        Ok(v) => factorize(v),
        Err(_) => unreachable!("table orders fit in u64"),
    }
}
