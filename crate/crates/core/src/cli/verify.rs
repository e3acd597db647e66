use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use super::cache::Contexts;
use super::config::{GroupArg, JobConfig, Suite};
use super::props;
use crate::algebra::{brute_force_idempotents, primitive_among, AlgebraContext, CentralElement};
use crate::blocks::{subconjugating_element, BlockSystem};
use crate::error::{Error, Result};
use crate::fusion::{all_centric_subgroups, aut_group, Verdict};
use crate::perm::{
    factorial, p_part, sylow_alternating, sylow_alternating_on, sylow_symmetric, sylow_symmetric_on, PermGroup,
};
use crate::vanishing::{coef_sweep, direct_power_coefficient, verify_vanishing, zero_hypothesis};

#[derive(Clone, Debug, Serialize)]
pub struct Event {
    pub target: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub targets: Vec<String>,
    pub cases: u64,
    pub failures: u64,
    pub events: Vec<Event>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite: suite.name().into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, target: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.events.push(Event {
                target: target.into(),
                detail: detail(),
            });
        }
    }

    fn fail(&mut self, target: &str, detail: String) {
        self.cases += 1;
        self.failures += 1;
        self.events.push(Event {
            target: target.into(),
            detail,
        });
    }
}

/// One `(group, n, p)` combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Target {
    pub group: GroupArg,
    pub n: usize,
    pub p: u32,
}

impl Target {
    pub fn label(&self) -> String {
        format!("{} p={}", self.group.name(self.n), self.p)
    }
}

fn grid(groups: &[GroupArg], degrees: impl IntoIterator<Item = usize> + Clone, primes: &[u32]) -> Vec<Target> {
    let mut out = Vec::new();
    for &group in groups {
        for n in degrees.clone() {
            for &p in primes {
                out.push(Target { group, n, p });
            }
        }
    }
    out
}

const BOTH: [GroupArg; 2] = [GroupArg::S, GroupArg::A];

/// Default sweep of each suite.
pub fn default_targets(suite: Suite) -> Vec<Target> {
    match suite {
        Suite::Blocks => grid(&BOTH, 2..=6, &[2, 3, 5]),
        Suite::Expcoef => grid(&BOTH, 1..=5, &[2, 3]),
        Suite::Vanishing => grid(&BOTH, 1..=7, &[2, 3]),
        Suite::Defect => grid(&BOTH, 1..=6, &[2, 3]),
        Suite::Centric => vec![
            Target { group: GroupArg::S, n: 4, p: 2 },
            Target { group: GroupArg::S, n: 6, p: 2 },
            Target { group: GroupArg::A, n: 6, p: 2 },
            Target { group: GroupArg::S, n: 6, p: 3 },
            Target { group: GroupArg::A, n: 6, p: 3 },
        ],
        Suite::BrauerPairs => {
            let mut t = grid(&[GroupArg::S], 1..=6, &[2, 3]);
            t.extend(grid(&[GroupArg::A], 1..=7, &[2, 3]));
            t
        }
        Suite::Fusion => {
            let mut t = grid(&[GroupArg::S], 1..=5, &[2, 3]);
            t.extend(grid(&[GroupArg::A], 1..=6, &[2]));
            t.extend(grid(&[GroupArg::A], 1..=7, &[3, 5]));
            t
        }
        Suite::Props | Suite::All => Vec::new(),
    }
}

/// Targets of a suite, restricted to the group, degree and prime given in
/// the config. A degree outside the default range is still run.
pub fn select_targets(suite: Suite, config: &JobConfig) -> Vec<Target> {
    let defaults = default_targets(suite);
    if let Some(n) = config.degree {
        let groups: Vec<GroupArg> = match config.group {
            Some(g) => vec![g],
            None => BOTH.to_vec(),
        };
        let mut primes: BTreeSet<u32> = defaults.iter().map(|t| t.p).collect();
        if let Some(p) = config.prime {
            primes = BTreeSet::from([p]);
        }
        if suite == Suite::Centric {
            return defaults
                .into_iter()
                .filter(|t| t.n == n && groups.contains(&t.group) && primes.contains(&t.p))
                .collect();
        }
        let primes: Vec<u32> = primes.into_iter().collect();
        return grid(&groups, [n], &primes);
    }
    defaults
        .into_iter()
        .filter(|t| config.group.is_none_or(|g| g == t.group))
        .filter(|t| config.prime.is_none_or(|p| p == t.p))
        .collect()
}

pub fn run_suite(suite: Suite, config: &JobConfig, contexts: &Contexts) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new(suite);
    if suite == Suite::Props {
        props::run(config.seed, &mut PropsSink(&mut report))?;
    } else {
        for t in select_targets(suite, config) {
            report.targets.push(t.label());
            match run_target(suite, t, config, contexts, &mut report) {
                Ok(()) => {}
                Err(Error::Falsified(msg)) => report.fail(&t.label(), msg),
                Err(e) => return Err(e),
            }
        }
    }
    if config.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

/// Adapter so the property suite can record into a report.
pub struct PropsSink<'a>(pub &'a mut SuiteReport);

impl PropsSink<'_> {
    pub fn check(&mut self, property: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.0.check(property, ok, detail);
    }
}

fn block_system(t: Target, config: &JobConfig, contexts: &Contexts) -> Result<(AlgebraContext, BlockSystem)> {
    let base = contexts.context(t.group, t.n, t.p)?;
    let sys = BlockSystem::new(&base, config.block_config())?;
    Ok((base, sys))
}

/// Runs `job` on a block system, moving to a larger field when local
/// computations need one.
fn with_system<T>(
    t: Target,
    config: &JobConfig,
    contexts: &Contexts,
    job: impl Fn(&BlockSystem) -> Result<T>,
) -> Result<T> {
    let base = contexts.context(t.group, t.n, t.p)?;
    BlockSystem::run(&base, config.block_config(), job)
}

fn run_target(suite: Suite, t: Target, config: &JobConfig, contexts: &Contexts, r: &mut SuiteReport) -> Result<()> {
    let label = t.label();
    match suite {
        Suite::Blocks => {
            let (_, sys) = block_system(t, config, contexts)?;
            let ctx = sys.ctx();
            let axioms = sys.decomposition().check_axioms(ctx);
            r.check(&label, axioms.is_ok(), || format!("{:?}", axioms.err()));
            if ctx.dimension() <= 12 {
                let all = brute_force_idempotents(ctx, config.max_tuples)?;
                let oracle: BTreeSet<CentralElement> = primitive_among(ctx, &all).into_iter().collect();
                let computed: BTreeSet<CentralElement> = sys.blocks().iter().map(|b| b.idempotent.clone()).collect();
                r.check(&label, oracle == computed, || {
                    format!("{} computed blocks, {} by enumeration", computed.len(), oracle.len())
                });
            }
            if t.group == GroupArg::S && t.n == 3 && t.p == 2 {
                golden_s3(&sys, r)?;
            }
            if sys.field().degree() > 1 {
                r.notes.push(format!("{label}: blocks split over GF({}^{})", t.p, sys.field().degree()));
            }
        }
        Suite::Expcoef => {
            let ctx = contexts.context(t.group, t.n, t.p)?;
            for rep in coef_sweep(&ctx)? {
                r.check(&label, rep.agree, || {
                    format!(
                        "a={} class {}: predicted {} (count {}), computed {}",
                        rep.a, rep.class, rep.predicted, rep.predicted_count, rep.oracle
                    )
                });
            }
            let powers = (0..ctx.dimension())
                .map(|c| ctx.pow_regular(&ctx.class_sum(c)))
                .collect::<Result<Vec<_>>>()?;
            for (i, class) in ctx.classes().classes().iter().enumerate() {
                if !class.rep.is_p_regular(t.p as u64) {
                    continue;
                }
                if let Some(w) = zero_hypothesis(&ctx, &class.rep, config.max_sylow)? {
                    for (c, power) in powers.iter().enumerate() {
                        r.check(&label, power.coeffs()[i].is_zero(), || {
                            format!("a={} has witness {} but class {c} power is nonzero", w.a, w.subgroup)
                        });
                    }
                }
            }
            let q = ctx.exponent().q()?;
            if ctx.elements().len() <= 24 && q <= 16 {
                for (c, power) in powers.iter().enumerate() {
                    for class in ctx.classes().classes() {
                        let direct = direct_power_coefficient(&ctx, &class.rep, c)?;
                        r.check(&label, direct == power.coeffs()[ctx.class_of(&class.rep)?], || {
                            format!("direct product disagrees at a={}, class {c}", class.rep)
                        });
                    }
                }
            }
        }
        Suite::Vanishing => {
            let (_, sys) = block_system(t, config, contexts)?;
            let v = verify_vanishing(&sys, config.alt_refinement_fixed_points, config.max_sylow)?;
            let blocks = sys.blocks().len() as u64;
            r.cases += v.criterion_classes.len() as u64 * blocks + v.witnesses.len() as u64;
            for e in &v.events {
                r.failures += 1;
                r.events.push(Event {
                    target: label.clone(),
                    detail: format!("{}: {}", e.class, e.detail),
                });
            }
            for c in &v.unlinked {
                r.fail(&label, format!("{c} meets the criterion but has no zero witness"));
            }
            for (c, zero) in &v.fixed_point_reading {
                r.notes.push(format!(
                    "{label}: {c} qualifies only through fixed points; block coefficients {}",
                    if *zero { "all zero" } else { "not all zero" }
                ));
            }
        }
        Suite::Defect => {
            let (_, sys) = block_system(t, config, contexts)?;
            check_defects(t, &sys, r)?;
        }
        Suite::Centric => check_centric(t, r)?,
        Suite::BrauerPairs => {
            let rows = with_system(t, config, contexts, |sys| {
                (0..sys.blocks().len()).map(|b| sys.pair_census(b)).collect::<Result<Vec<_>>>()
            })?;
            for (b, census) in rows.iter().enumerate() {
                let first = census.pairs.first().copied().unwrap_or(1);
                let constant = census.pairs.iter().all(|&c| c == first);
                let ok = match t.group {
                    GroupArg::S => constant && first == 1,
                    GroupArg::A => constant && (first == 1 || first == 2),
                };
                r.check(&label, ok, || format!("block {b}: pair counts {:?}", census.pairs));
                if first == 2 {
                    r.notes.push(format!(
                        "{label} block {b}: two pairs at every centric subgroup; {} swap tests",
                        census.parity.checked
                    ));
                    r.check(&label, census.parity.checked > 0 && census.parity.failures == 0, || {
                        format!(
                            "block {b}: {} of {} swap tests disagree with parity",
                            census.parity.failures, census.parity.checked
                        )
                    });
                }
            }
        }
        Suite::Fusion => {
            let exhaustive = t.n <= 5;
            let outcome = with_system(t, config, contexts, |sys| {
                let mut rows = Vec::new();
                for b in 0..sys.blocks().len() {
                    let report = sys.identify(b)?;
                    let mut spot = Vec::new();
                    if exhaustive && report.verdict != Verdict::Falsified {
                        spot = spot_check_all_centrics(sys, b, &report)?;
                    }
                    rows.push((report, spot));
                }
                Ok(rows)
            })?;
            for (report, spot) in outcome {
                let b = report.block;
                let expected = match (t.group, t.p) {
                    (GroupArg::S, _) => report.verdict == Verdict::SymmetricM,
                    (GroupArg::A, 2) => report.verdict == Verdict::AlternatingM,
                    (GroupArg::A, _) => {
                        report.verdict == Verdict::AlternatingM
                            || (report.verdict == Verdict::SymmetricM && report.matches.al == Some(true))
                    }
                };
                r.check(&label, expected, || {
                    format!(
                        "block {b}: verdict {} (matches S_M={}, A_M={}, A_L={:?}) at {:?}",
                        report.verdict, report.matches.sm, report.matches.am, report.matches.al, report.witness
                    )
                });
                r.check(&label, report.saturation, || format!("block {b}: Aut_P(P) is not Sylow in Aut_F(P)"));
                if t.group == GroupArg::A && t.p != 2 && report.verdict == Verdict::SymmetricM {
                    r.notes.push(format!(
                        "{label} block {b}: matches S_M only, A_L on {:?} validated",
                        report.l.clone().unwrap_or_default()
                    ));
                }
                for (q, ok) in spot {
                    r.check(&label, ok, || format!("block {b}: non-representative centric {q} disagrees"));
                }
            }
        }
        Suite::Props | Suite::All => {}
    }
    Ok(())
}

fn golden_s3(sys: &BlockSystem, r: &mut SuiteReport) -> Result<()> {
    let ctx = sys.ctx();
    let label = "S_3 p=2 golden";
    let three = ctx.class_sum(2);
    let expected: BTreeSet<CentralElement> = [three.clone(), ctx.add(&ctx.one(), &three)].into_iter().collect();
    let got: BTreeSet<CentralElement> = sys.blocks().iter().map(|b| b.idempotent.clone()).collect();
    r.check(label, got == expected, || format!("blocks {:?}", got));
    for (b, d) in sys.blocks().iter().zip(sys.defect_groups()?) {
        let want = if b.idempotent == three { 1 } else { 2 };
        r.check(label, d.order == want, || format!("block {}: defect order {}", b.index, d.order));
    }
    Ok(())
}

fn sylow_order_on(group: GroupArg, m: usize, p: u32) -> u128 {
    let full = factorial(m as u64);
    let order = match group {
        GroupArg::S => full,
        GroupArg::A if m >= 2 => full / 2,
        GroupArg::A => 1,
    };
    p_part(order, p as u128)
}

fn check_defects(t: Target, sys: &BlockSystem, r: &mut SuiteReport) -> Result<()> {
    let label = t.label();
    let n = t.n;
    for (b, d) in sys.blocks().iter().zip(sys.defect_groups()?) {
        let m = &d.moved;
        r.check(&label, d.order as u128 == sylow_order_on(t.group, m.len(), t.p), || {
            format!("block {}: |D| = {} but M has {} points", b.index, d.order, m.len())
        });
        // explicit conjugacy to the standard Sylow subgroup of S_M or A_M
        let (host, standard) = match t.group {
            GroupArg::S => (PermGroup::symmetric_on(n, m), sylow_symmetric_on(n, m, t.p as usize)?),
            GroupArg::A => (PermGroup::alternating_on(n, m), sylow_alternating_on(n, m, t.p as usize)?),
        };
        let conj = subconjugating_element(host.elements()?.list(), &standard, d.group.elements()?.list());
        r.check(&label, conj.is_some() && standard.order()? == d.order as u128, || {
            format!("block {}: defect group not conjugate in the group on M", b.index)
        });
        // the witness: in the support, D Sylow in its centralizer, D moving only its fixed points
        let a = &d.witness;
        let class = sys.ctx().class_of(a)?;
        let in_support = !b.idempotent.coeffs()[class].is_zero();
        let cent = sys.group().centralizer(a)?;
        let sylow_in_cent = d.group.is_subgroup_of(&cent)? && p_part(cent.order()?, t.p as u128) == d.order as u128;
        let inside = m.iter().all(|x| d.witness_fixed.contains(x));
        let fixed_order = sylow_order_on(t.group, d.witness_fixed.len(), t.p) == d.order as u128;
        r.check(&label, in_support && sylow_in_cent && inside && fixed_order, || {
            format!(
                "block {}: witness {a} fails (support {in_support}, Sylow {sylow_in_cent}, inside {inside}, fixed {fixed_order})",
                b.index
            )
        });
    }
    Ok(())
}

fn check_centric(t: Target, r: &mut SuiteReport) -> Result<()> {
    let label = t.label();
    let p = t.p as usize;
    let sylow = match t.group {
        GroupArg::S => sylow_symmetric(t.n, p)?,
        GroupArg::A => sylow_alternating(t.n, p)?,
    };
    let sym = PermGroup::symmetric(t.n);
    let centrics = all_centric_subgroups(&sylow, p as u64, u64::MAX)?;
    for q in centrics {
        let fixed: Vec<usize> = q.fixed_points().iter().map(|x| x + 1).collect();
        r.check(&label, fixed.is_empty(), || {
            format!("centric {} fixes {:?}", q.generator_string(), fixed)
        });
        let c = sym.centralizer_of_subgroup(&q)?;
        let p_group = c.elements()?.list().iter().all(|x| x.is_p_element(p as u64));
        r.check(&label, p_group, || {
            format!("centralizer of {} is not a {p}-group", q.generator_string())
        });
    }
    Ok(())
}

/// At every centric subgroup (not only representatives), the block
/// automorphisms agree with those of the group named by the verdict.
fn spot_check_all_centrics(
    sys: &BlockSystem,
    block: usize,
    report: &crate::fusion::FusionReport,
) -> Result<Vec<(String, bool)>> {
    let n = sys.group().degree();
    let m: Vec<usize> = report.defect.m.iter().map(|x| x - 1).collect();
    let host = match (report.verdict, &report.l) {
        (Verdict::AlternatingM, _) => PermGroup::alternating_on(n, &m),
        (Verdict::SymmetricM, Some(l)) if sys.group().kind() == crate::perm::GroupKind::Alternating => {
            let l: Vec<usize> = l.iter().map(|x| x - 1).collect();
            PermGroup::alternating_on(n, &l)
        }
        _ => PermGroup::symmetric_on(n, &m),
    };
    let top = sys.maximal_pair(block)?;
    let mut out = Vec::new();
    for q in all_centric_subgroups(&top.q, sys.p() as u64, sys.config().max_sylow)? {
        let ok = sys.aut_f_block(&top, &q)? == aut_group(&host, &q)?;
        out.push((q.generator_string(), ok));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection() {
        let mut c = JobConfig::sweep();
        assert_eq!(select_targets(Suite::Expcoef, &c).len(), 20);
        c.degree = Some(4);
        let t = select_targets(Suite::Expcoef, &c);
        assert_eq!(t.len(), 4);
        c.degree = Some(1);
        assert!(select_targets(Suite::Centric, &c).is_empty());
        c.degree = None;
        c.group = Some(GroupArg::A);
        c.prime = Some(3);
        assert_eq!(select_targets(Suite::Centric, &c).len(), 1);
    }

    #[test]
    fn small_sweeps_pass() {
        let contexts = Contexts::new(None, 1 << 20, 1);
        let mut c = JobConfig::sweep();
        c.degree = Some(4);
        for suite in [Suite::Blocks, Suite::Expcoef, Suite::Vanishing, Suite::Defect, Suite::BrauerPairs, Suite::Fusion] {
            let r = run_suite(suite, &c, &contexts).unwrap();
            assert!(r.passed(), "{}: {:?}", suite.name(), r.events);
            assert!(r.cases > 0);
        }
    }
}
