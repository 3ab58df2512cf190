//! Instance checks of structural statements about S-rings over abelian
//! groups, run over enumerated desk-scale objects.

use crate::arith::{factorize, gcd, is_prime};
use crate::ci::{is_ci_sring, CI_SRING_CAP};
use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};
use crate::overgroups::{is_complete_sub, sup_min, ClosedOvergroup, SUP_MIN_CAP};
use crate::perm::Perm;
use crate::products::{
    generalized_wreath_check, is_cayley_minimal, is_cyclotomic, is_decomposable, is_p_sring, kr_condition, star_check,
    DecompositionKind,
};
use crate::rational::primitive_rational_search;
use crate::sring::{enumerate_srings, rational_closure, regular_representation, trace_set, SchurRing, ISO_CAP};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap};

/// Statement identifiers with a one-line description.
pub const STATEMENTS: &[(&str, &str)] = &[
    ("PropW", "primitive S-rings over abelian groups of composite order with a cyclic Sylow subgroup have rank 2"),
    ("SWi", "X^(m) is a basic set for every basic set X and m coprime to |G|"),
    ("SWii", "X^[p,k] is an A-set for every A-set X"),
    ("PropIso", "normalized isomorphisms map A-subgroups, cosets and quotients compatibly"),
    ("LemmaSylow", "LU_p is an A-subgroup when |U/L| = n p^t with 1 < n < p"),
    ("PropHM", "G_R is complete in aut(A) iff Iso_e(A) = aut(A)_e Aut(G)"),
    ("PropKM2", "A_{G/U} is a p-S-ring when G/U is a p-group"),
    ("PropMS1", "A is the HQ/Q-wreath product"),
    ("PropMS2", "A_{HQ} = A_H * A_Q when |HQ/H| != q or A_{HQ/H} is the group ring"),
    ("LemmaMix", "S-rings over Z_p are cyclotomic, over Z_pq cyclotomic or wreath, cyclotomic ones Cayley minimal"),
    (
        "LemmaCentre",
        "prime order A-subgroups of indecomposable minimal overgroups are central and split into singletons",
    ),
    ("LemmaRank2", "basic sets with elements of coprime orders are rational; rank 2 rational closure forces rank 2"),
    ("LemmaTrivial", "P_p-invariant basic sets meet G_p-cosets of p'-elements in one of four shapes"),
    ("LemmaCiComplementary", "complementary A-subgroups of a minimal overgroup give a tensor product"),
    ("PropDW", "a unique A-subgroup L of order p over C_p^2 makes A a wreath product over L"),
    ("EqP2P", "there are exactly two p-S-rings over C_p^2 up to isomorphism"),
    (
        "PropEKP",
        "complementary A-subgroups H1, H2 give A containing A_H1 (x) A_H2, with equality if one factor is discrete",
    ),
    ("CorCiWp", "a CI generalized wreath product with discrete section ring is CI"),
    ("LemmaCiGwp", "a CI generalized wreath product with A_{G/L} = A_S (x) A_H is CI"),
    ("PropCiCaymin", "a CI generalized wreath product with a cyclotomic factor and Cayley minimal A_S is CI"),
    ("PropKR", "a CI generalized wreath product satisfying the automorphism condition is CI"),
];

#[derive(Clone, Debug, Default)]
pub struct Scope {
    pub max_order: Option<usize>,
    pub groups: Option<Vec<Group>>,
    pub p: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub id: String,
    pub description: String,
    pub groups: Vec<String>,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
    pub failures: Vec<Value>,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Default)]
struct Tally {
    instances: usize,
    passed: usize,
    failed: usize,
    not_applicable: usize,
    failures: Vec<Value>,
}

impl Tally {
    fn skip(&mut self) {
        self.instances += 1;
        self.not_applicable += 1;
    }

    fn check(&mut self, pass: bool, witness: impl FnOnce() -> Value) {
        self.instances += 1;
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.failures.push(witness());
        }
    }
}

fn ring_witness(a: &SchurRing) -> Value {
    a.to_json()
}

fn subgroup_json(g: &Group, h: &Subgroup) -> Value {
    json!(h.members().iter().map(|&x| g.coords(x)).collect::<Vec<_>>())
}

pub fn run_check(id: &str, scope: &Scope) -> Result<LemmaReport> {
    let (_, description) =
        STATEMENTS.iter().find(|(k, _)| *k == id).ok_or_else(|| Error::UnknownStatement(id.to_string()))?;
    let groups = scope_groups(id, scope)?;
    let mut t = Tally::default();
    for g in &groups {
        match id {
            "PropW" => prop_w(g, &mut t)?,
            "SWi" => sw_i(g, &mut t)?,
            "SWii" => sw_ii(g, &mut t)?,
            "PropIso" => prop_iso(g, &mut t)?,
            "LemmaSylow" => lemma_sylow(g, &mut t)?,
            "PropHM" => prop_hm(g, &mut t)?,
            "PropKM2" => prop_km2(g, &mut t)?,
            "PropMS1" => prop_ms(g, &mut t, false)?,
            "PropMS2" => prop_ms(g, &mut t, true)?,
            "LemmaMix" => lemma_mix(g, &mut t)?,
            "LemmaCentre" => lemma_centre(g, &mut t)?,
            "LemmaRank2" => lemma_rank2(g, &mut t)?,
            "LemmaTrivial" => lemma_trivial(g, &mut t)?,
            "LemmaCiComplementary" => lemma_ci_complementary(g, &mut t)?,
            "PropDW" => prop_dw(g, &mut t)?,
            "EqP2P" => eq_p2p(g, &mut t)?,
            "PropEKP" => prop_ekp(g, &mut t)?,
            "CorCiWp" | "LemmaCiGwp" | "PropCiCaymin" | "PropKR" => ci_wreath(id, g, &mut t)?,
            _ => unreachable!(),
        }
    }
    if id == "LemmaTrivial" && scope.groups.is_none() {
        for (p, q) in [(2, 3), (3, 5)] {
            for s in primitive_rational_search(p, q)?.survivors {
                lemma_trivial_ring(&s.sring, &mut t);
            }
        }
    }
    Ok(LemmaReport {
        id: id.to_string(),
        description: description.to_string(),
        groups: groups.iter().map(|g| g.name()).collect(),
        instances: t.instances,
        passed: t.passed,
        failed: t.failed,
        not_applicable: t.not_applicable,
        failures: t.failures,
    })
}

pub fn run_all(scope: &Scope) -> Result<Vec<LemmaReport>> {
    STATEMENTS.iter().map(|(id, _)| run_check(id, scope)).collect()
}

fn abelian_up_to(max: usize, keep: impl Fn(&Group) -> bool) -> Result<Vec<Group>> {
    let mut out = Vec::new();
    for n in 2..=max as u64 {
        out.extend(Group::abelian_groups(n)?.into_iter().filter(|g| keep(g)));
    }
    Ok(out)
}

fn named(names: &[&str]) -> Result<Vec<Group>> {
    names.iter().map(|n| Group::parse(n)).collect()
}

fn distinct_primes(g: &Group) -> usize {
    factorize(g.order() as u64).len()
}

fn has_cyclic_sylow(g: &Group) -> bool {
    g.primes().iter().any(|&p| g.factors().iter().filter(|&&d| d % p == 0).count() == 1)
}

fn squarefree_exponent(g: &Group) -> bool {
    factorize(g.exponent()).iter().all(|&(_, e)| e == 1)
}

fn scope_groups(id: &str, scope: &Scope) -> Result<Vec<Group>> {
    if let Some(gs) = &scope.groups {
        return Ok(gs.clone());
    }
    let max = |d: usize| scope.max_order.unwrap_or(d);
    let p = scope.p;
    match id {
        "PropW" => abelian_up_to(max(16), |g| !is_prime(g.order() as u64) && has_cyclic_sylow(g)),
        "SWi" | "SWii" | "PropEKP" => abelian_up_to(max(12), |_| true),
        "PropIso" | "PropHM" => abelian_up_to(max(8), |_| true),
        "LemmaSylow" => match scope.max_order {
            Some(m) => abelian_up_to(m, |_| true),
            None => named(&["Z6", "Z12", "C2xC2xC3"]),
        },
        "PropKM2" | "LemmaCentre" | "LemmaCiComplementary" => abelian_up_to(max(12), |_| true),
        "PropMS1" | "PropMS2" => {
            abelian_up_to(max(16), |g| g.primes().iter().any(|&q| !(g.order() as u64 / q).is_multiple_of(q)))
        }
        "LemmaMix" => abelian_up_to(max(15), |g| {
            let f = factorize(g.order() as u64);
            g.is_cyclic() && f.iter().all(|&(_, e)| e == 1) && f.len() <= 2
        }),
        "LemmaRank2" => abelian_up_to(max(16), |g| distinct_primes(g) >= 2),
        "LemmaTrivial" => abelian_up_to(max(12), |g| {
            distinct_primes(g) >= 2 && g.primes().iter().any(|&q| g.sylow(q).order() as u64 == q * q && g.rank() >= 2)
        }),
        "PropDW" | "EqP2P" => {
            let p = p.unwrap_or(if id == "PropDW" { 2 } else { 3 });
            if !is_prime(p) {
                return Err(Error::NotApplicable(format!("{p} is not a prime")));
            }
            Ok(vec![Group::new(&[p, p])?])
        }
        _ => abelian_up_to(max(12), squarefree_exponent),
    }
}

fn srings(g: &Group) -> Result<Vec<SchurRing>> {
    enumerate_srings(g, g.order().max(crate::sring::ENUMERATION_CAP))
}

fn prop_w(g: &Group, t: &mut Tally) -> Result<()> {
    for a in srings(g)? {
        if !a.is_primitive() {
            t.skip();
            continue;
        }
        t.check(a.rank() == 2, || ring_witness(&a));
    }
    Ok(())
}

fn sw_i(g: &Group, t: &mut Tally) -> Result<()> {
    let multipliers: Vec<u64> = (1..g.order() as u64).filter(|&m| gcd(m, g.order() as u64) == 1).collect();
    for a in srings(g)? {
        let mut ok = true;
        let mut bad = Value::Null;
        for x in a.classes() {
            for &m in &multipliers {
                let mut img: Vec<Elem> = x.iter().map(|&e| g.scale(e, m as i64)).collect();
                img.sort_unstable();
                if a.class_containing(img[0]) != img.as_slice() {
                    ok = false;
                    bad = json!({ "sring": a.to_json(), "basic_set": x, "m": m });
                }
            }
        }
        t.check(ok, || bad);
    }
    Ok(())
}

/// `X^[p,k]` computed from its definition.
fn sw_layer_def(g: &Group, x: &[Elem], p: u64, k: u64) -> Vec<Elem> {
    let gp: Vec<Elem> = g.elements().filter(|&h| g.scale(h, p as i64) == 0).collect();
    let set: BTreeSet<Elem> = x.iter().copied().collect();
    let out: BTreeSet<Elem> = x
        .iter()
        .filter(|&&y| (gp.iter().filter(|&&h| set.contains(&g.add(y, h))).count() as u64) % p == k)
        .map(|&y| g.scale(y, p as i64))
        .collect();
    out.into_iter().collect()
}

fn sw_ii(g: &Group, t: &mut Tally) -> Result<()> {
    for a in srings(g)? {
        let r = a.rank();
        // all A-sets when few, basic sets and their pairwise unions otherwise
        let sets: Vec<Vec<Elem>> = if r <= 10 {
            (1u32..1 << r)
                .map(|mask| (0..r).filter(|i| mask >> i & 1 == 1).flat_map(|i| a.classes()[i].clone()).collect())
                .collect()
        } else {
            let mut v = Vec::new();
            for i in 0..r {
                for j in i..r {
                    let mut s = a.classes()[i].clone();
                    if j != i {
                        s.extend(&a.classes()[j]);
                    }
                    v.push(s);
                }
            }
            v
        };
        let mut ok = true;
        let mut bad = Value::Null;
        for x in &sets {
            for p in g.primes() {
                for k in 1..p {
                    let layer = sw_layer_def(g, x, p, k);
                    if !a.is_a_set(&layer) {
                        ok = false;
                        bad = json!({ "sring": a.to_json(), "set": x, "p": p, "k": k });
                    }
                }
            }
        }
        t.check(ok, || bad);
    }
    Ok(())
}

/// Whether `phi` maps each basic graph of `a` onto a basic graph of `b`.
fn is_isomorphism(a: &SchurRing, b: &SchurRing, phi: &[Elem]) -> bool {
    let (ga, gb) = (a.group(), b.group());
    if a.rank() != b.rank() || ga.order() != gb.order() {
        return false;
    }
    let mut sigma: HashMap<usize, usize> = HashMap::new();
    for x in ga.elements() {
        for y in ga.elements() {
            let ca = a.class_of(ga.sub(y, x));
            let cb = b.class_of(gb.sub(phi[y], phi[x]));
            if *sigma.entry(ca).or_insert(cb) != cb {
                return false;
            }
        }
    }
    sigma.values().collect::<BTreeSet<_>>().len() == sigma.len()
}

fn prop_iso(g: &Group, t: &mut Tally) -> Result<()> {
    let all = srings(g)?;
    for a in &all {
        for b in &all {
            for phi in a.isomorphisms_e(b, ISO_CAP)? {
                let img = |s: &[Elem]| {
                    let mut v = phi.image_set(s);
                    v.sort_unstable();
                    v
                };
                for e in a.a_subgroups() {
                    let ephi = img(e.members());
                    let ok_i = g.subgroup_from_members(&ephi).is_some_and(|h| b.is_a_subgroup(&h)) && {
                        let (ae, se) = a.restriction(&e)?;
                        let h = g.subgroup_from_members(&ephi).expect("checked");
                        let (be, sh) = b.restriction(&h)?;
                        // phi restricted to E, in quotient coordinates
                        let mut map = vec![0; ae.group().order()];
                        for &x in e.members() {
                            map[se.project(x).expect("in E")] = sh.project(phi.apply(x)).expect("in image");
                        }
                        is_isomorphism(&ae, &be, &map)
                    };
                    let ok_ii = g.elements().all(|x| {
                        let coset: Vec<Elem> = g.translate(e.members(), x);
                        img(&coset) == g.translate(&ephi, phi.apply(x))
                    });
                    let ok_iii = ok_i && ok_ii && {
                        let h = g.subgroup_from_members(&ephi).expect("checked");
                        let (aq, sq) = a.quotient_by(&e)?;
                        let (bq, sb) = b.quotient_by(&h)?;
                        let mut map = vec![0; aq.group().order()];
                        for x in g.elements() {
                            map[sq.project(x).expect("whole group")] = sb.project(phi.apply(x)).expect("whole group");
                        }
                        map[0] == 0 && is_isomorphism(&aq, &bq, &map)
                    };
                    t.check(ok_i && ok_ii && ok_iii, || {
                        json!({ "from": a.to_json(), "to": b.to_json(), "phi": phi.images(), "subgroup": subgroup_json(g, &e),
                                "i": ok_i, "ii": ok_ii, "iii": ok_iii })
                    });
                }
            }
        }
    }
    Ok(())
}

fn minimal_overgroups(g: &Group) -> Result<Vec<ClosedOvergroup>> {
    sup_min(g, SUP_MIN_CAP.max(g.order()))
}

fn lemma_sylow(g: &Group, t: &mut Tally) -> Result<()> {
    for m in minimal_overgroups(g)? {
        let a = &m.sring;
        let subs = a.a_subgroups();
        let mut applicable = false;
        for l in &subs {
            for u in &subs {
                if l.order() >= u.order() || !l.is_subset_of(u) {
                    continue;
                }
                let idx = (u.order() / l.order()) as u64;
                for (p, e) in factorize(idx) {
                    let n = idx / p.pow(e);
                    if !(1 < n && n < p) {
                        continue;
                    }
                    applicable = true;
                    let up = u.intersect(&g.sylow(p));
                    let lup = l.join(&up, g);
                    t.check(
                        a.is_a_subgroup(&lup),
                        || json!({ "sring": a.to_json(), "L": subgroup_json(g, l), "U": subgroup_json(g, u), "p": p }),
                    );
                }
            }
        }
        if !applicable {
            t.skip();
        }
    }
    Ok(())
}

fn prop_hm(g: &Group, t: &mut Tally) -> Result<()> {
    let all = srings(g)?;
    let aut_g = g.automorphism_group(crate::group::DEFAULT_CAP.max(g.order()))?.elements();
    let gr = regular_representation(g);
    for a in &all {
        let aut = a.automorphisms()?;
        if SchurRing::transitivity_module(g, &aut)? != *a {
            t.skip();
            continue;
        }
        let complete = is_complete_sub(&gr, &aut, g)?;
        let mut iso_ok = true;
        for b in &all {
            for phi in a.isomorphisms_e(b, ISO_CAP)? {
                let inside = aut_g.iter().any(|alpha| aut.contains(&phi.then(&alpha.inverse())));
                iso_ok &= inside;
            }
        }
        t.check(
            complete == iso_ok,
            || json!({ "sring": a.to_json(), "complete": complete, "iso_e_factorizes": iso_ok }),
        );
    }
    Ok(())
}

fn prop_km2(g: &Group, t: &mut Tally) -> Result<()> {
    for m in minimal_overgroups(g)? {
        let a = &m.sring;
        let mut applicable = false;
        for u in a.a_subgroups() {
            let idx = (g.order() / u.order()) as u64;
            let f = factorize(idx);
            if f.len() != 1 {
                continue;
            }
            applicable = true;
            let (q, _) = a.quotient_by(&u)?;
            t.check(is_p_sring(&q, f[0].0), || json!({ "sring": a.to_json(), "U": subgroup_json(g, &u) }));
        }
        if !applicable {
            t.skip();
        }
    }
    Ok(())
}

fn prop_ms(g: &Group, t: &mut Tally, second: bool) -> Result<()> {
    let qs: Vec<u64> = g.primes().into_iter().filter(|&q| !(g.order() as u64 / q).is_multiple_of(q)).collect();
    for a in srings(g)? {
        let subs = a.a_subgroups();
        for &q in &qs {
            let divisible: Vec<&Subgroup> = subs.iter().filter(|h| (h.order() as u64).is_multiple_of(q)).collect();
            let qq = divisible.iter().skip(1).fold(divisible[0].clone(), |acc, h| acc.intersect(h));
            let hh = subs
                .iter()
                .filter(|h| gcd(h.order() as u64, q) == 1)
                .fold(g.trivial_subgroup(), |acc, h| acc.join(h, g));
            let hq = hh.join(&qq, g);
            let witness =
                || json!({ "sring": a.to_json(), "q": q, "Q": subgroup_json(g, &qq), "H": subgroup_json(g, &hh) });
            if !second {
                let r = generalized_wreath_check(&a, &hq, &qq)?;
                t.check(r.holds(), witness);
                continue;
            }
            let (top, _) = a.section_ring(&hq, &hh)?;
            let cond = hq.order() / hh.order() != q as usize || top.rank() == top.group().order();
            if !cond {
                t.skip();
                continue;
            }
            let (r, sec) = a.restriction(&hq)?;
            let project = |h: &Subgroup| {
                r.group().subgroup_from_members(&sec.project_set(h.members()).expect("inside HQ")).expect("subgroup")
            };
            let rep = star_check(&r, &project(&hh), &project(&qq))?;
            t.check(matches!(rep.kind, DecompositionKind::Star | DecompositionKind::Tensor), witness);
        }
    }
    Ok(())
}

fn plain_wreath(a: &SchurRing) -> Result<bool> {
    let g = a.group();
    for l in a.a_subgroups() {
        if l.is_trivial() || l.order() == g.order() {
            continue;
        }
        if generalized_wreath_check(a, &l, &l)?.holds() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn lemma_mix(g: &Group, t: &mut Tally) -> Result<()> {
    let n = g.order() as u64;
    for a in srings(g)? {
        let cyc = is_cyclotomic(&a)?;
        if is_prime(n) {
            t.check(cyc, || json!({ "part": "i", "sring": a.to_json() }));
        } else if a.rank() != 2 {
            let ok = cyc || plain_wreath(&a)?;
            t.check(ok, || json!({ "part": "ii", "sring": a.to_json() }));
        } else {
            t.skip();
        }
        if cyc {
            let m = is_cayley_minimal(&a)?;
            t.check(m, || json!({ "part": "iii", "sring": a.to_json() }));
        }
    }
    Ok(())
}

fn lemma_centre(g: &Group, t: &mut Tally) -> Result<()> {
    for m in minimal_overgroups(g)? {
        let a = &m.sring;
        if is_decomposable(a) {
            t.skip();
            continue;
        }
        let mut applicable = false;
        for l in a.a_subgroups() {
            if !is_prime(l.order() as u64) {
                continue;
            }
            applicable = true;
            let central = l.members().iter().all(|&u| {
                let rho = Perm::from_images(g.elements().map(|x| g.add(x, u)).collect()).expect("translation");
                m.group.generators().iter().all(|h| rho.commutes_with(h))
            });
            let singletons = l.members().iter().all(|&u| a.class_containing(u).len() == 1);
            t.check(central && singletons, || {
                json!({ "sring": a.to_json(), "L": subgroup_json(g, &l), "central": central, "singletons": singletons })
            });
        }
        if !applicable {
            t.skip();
        }
    }
    Ok(())
}

fn lemma_rank2(g: &Group, t: &mut Tally) -> Result<()> {
    for a in srings(g)? {
        for x in a.classes() {
            let mixed = x.iter().any(|&u| x.iter().any(|&v| gcd(g.element_order(u), g.element_order(v)) == 1));
            if mixed {
                t.check(trace_set(g, x) == *x, || json!({ "part": "i", "sring": a.to_json(), "basic_set": x }));
            }
        }
        if rational_closure(&a).rank() == 2 {
            t.check(a.rank() == 2, || json!({ "part": "ii", "sring": a.to_json() }));
        } else {
            t.skip();
        }
    }
    Ok(())
}

/// Whether `s ⊆ G_p` is empty, an order `p` subgroup, its complement in
/// `G_p`, or `G_p`.
fn four_shapes(g: &Group, gp: &Subgroup, p: u64, s: &[Elem]) -> bool {
    if s.is_empty() || s == gp.members() {
        return true;
    }
    let set: BTreeSet<Elem> = s.iter().copied().collect();
    gp.members().iter().filter(|&&x| x != 0).any(|&x| {
        let r = g.generated(&[x]);
        let rs: BTreeSet<Elem> = r.members().iter().copied().collect();
        let comp: BTreeSet<Elem> = gp.members().iter().copied().filter(|y| !rs.contains(y)).collect();
        r.order() as u64 == p && (set == rs || set == comp)
    })
}

fn lemma_trivial_ring(a: &SchurRing, t: &mut Tally) {
    let g = a.group();
    for p in g.primes() {
        let gp = g.sylow(p);
        if gp.order() as u64 != p * p || gp.order() == g.order() || g.generated(gp.members()).order() != gp.order() {
            continue;
        }
        if gp.members().iter().any(|&x| g.element_order(x) == p * p) {
            continue;
        }
        if !a.is_primitive() {
            t.skip();
            continue;
        }
        let mults = g.power_multipliers(Some(p));
        for x in a.classes() {
            let invariant = mults.iter().all(|&m| {
                let mut img: Vec<Elem> = x.iter().map(|&e| g.scale(e, m as i64)).collect();
                img.sort_unstable();
                img == *x
            });
            if !invariant {
                continue;
            }
            let set: BTreeSet<Elem> = x.iter().copied().collect();
            for y in g.elements().filter(|&y| y != 0 && !g.element_order(y).is_multiple_of(p)) {
                let mut s: Vec<Elem> = gp.members().iter().filter(|&&h| set.contains(&g.add(h, y))).copied().collect();
                s.sort_unstable();
                t.check(
                    four_shapes(g, &gp, p, &s),
                    || json!({ "sring": a.to_json(), "basic_set": x, "x": g.coords(y) }),
                );
            }
        }
    }
}

fn lemma_trivial(g: &Group, t: &mut Tally) -> Result<()> {
    for a in srings(g)? {
        lemma_trivial_ring(&a, t);
    }
    Ok(())
}

fn complementary_pairs(a: &SchurRing) -> Vec<(Subgroup, Subgroup)> {
    let g = a.group();
    let subs = a.a_subgroups();
    let mut out = Vec::new();
    for (i, h1) in subs.iter().enumerate() {
        for h2 in subs.iter().skip(i + 1) {
            if !h1.is_trivial()
                && !h2.is_trivial()
                && h1.order() * h2.order() == g.order()
                && h1.intersect(h2).is_trivial()
            {
                out.push((h1.clone(), h2.clone()));
            }
        }
    }
    out
}

fn lemma_ci_complementary(g: &Group, t: &mut Tally) -> Result<()> {
    for m in minimal_overgroups(g)? {
        let a = &m.sring;
        let pairs = complementary_pairs(a);
        if pairs.is_empty() {
            t.skip();
        }
        for (h1, h2) in pairs {
            let tensor = star_check(a, &h1, &h2)?.kind == DecompositionKind::Tensor;
            let ci_parts = is_ci_sring(&a.restriction(&h1)?.0, CI_SRING_CAP)?.ci
                && is_ci_sring(&a.restriction(&h2)?.0, CI_SRING_CAP)?.ci;
            let ci_ok = !ci_parts || is_ci_sring(a, CI_SRING_CAP)?.ci;
            t.check(tensor && ci_ok, || {
                json!({ "sring": a.to_json(), "H1": subgroup_json(g, &h1), "H2": subgroup_json(g, &h2), "tensor": tensor })
            });
        }
    }
    Ok(())
}

fn prop_dw(g: &Group, t: &mut Tally) -> Result<()> {
    let p = g.factors()[0] as usize;
    for a in srings(g)? {
        if !a.is_schurian()? {
            t.skip();
            continue;
        }
        let order_p: Vec<Subgroup> = a.a_subgroups().into_iter().filter(|h| h.order() == p).collect();
        if order_p.len() != 1 {
            t.skip();
            continue;
        }
        let l = &order_p[0];
        t.check(
            generalized_wreath_check(&a, l, l)?.holds(),
            || json!({ "sring": a.to_json(), "L": subgroup_json(g, l) }),
        );
    }
    Ok(())
}

fn eq_p2p(g: &Group, t: &mut Tally) -> Result<()> {
    let p = g.factors()[0];
    let mut reps: Vec<SchurRing> = Vec::new();
    for a in srings(g)?.into_iter().filter(|a| is_p_sring(a, p)) {
        let mut new = true;
        for r in &reps {
            if !a.isomorphisms_e(r, ISO_CAP)?.is_empty() {
                new = false;
                break;
            }
        }
        if new {
            reps.push(a);
        }
    }
    let discrete = reps.iter().filter(|r| r.rank() == g.order()).count();
    let mut wreaths = 0;
    for r in reps.iter().filter(|r| r.rank() < g.order()) {
        wreaths += usize::from(plain_wreath(r)?);
    }
    t.check(
        reps.len() == 2 && discrete == 1 && wreaths == 1,
        || json!({ "classes": reps.iter().map(|r| r.to_json()).collect::<Vec<_>>() }),
    );
    Ok(())
}

fn prop_ekp(g: &Group, t: &mut Tally) -> Result<()> {
    for a in srings(g)? {
        let pairs = complementary_pairs(&a);
        if pairs.is_empty() {
            t.skip();
        }
        for (h1, h2) in pairs {
            let inside = |h: &Subgroup| -> Vec<Vec<Elem>> {
                a.classes().iter().filter(|x| x.iter().all(|&e| h.contains(e))).cloned().collect()
            };
            let (b1, b2) = (inside(&h1), inside(&h2));
            let products: Vec<Vec<Elem>> = b1.iter().flat_map(|x| b2.iter().map(move |y| g.sumset(x, y))).collect();
            let contains = products.iter().all(|s| a.is_a_set(s));
            let discrete = b1.len() == h1.order() || b2.len() == h2.order();
            let equal = !discrete || products.iter().all(|s| a.class_containing(s[0]) == s.as_slice());
            t.check(contains && equal, || {
                json!({ "sring": a.to_json(), "H1": subgroup_json(g, &h1), "H2": subgroup_json(g, &h2), "contains": contains, "equal": equal })
            });
        }
    }
    Ok(())
}

struct CiMemo(HashMap<(Vec<u64>, Vec<u32>), bool>);

impl CiMemo {
    fn ci(&mut self, a: &SchurRing) -> Result<bool> {
        let key = (a.group().factors().to_vec(), a.coloring().to_vec());
        if let Some(&v) = self.0.get(&key) {
            return Ok(v);
        }
        let v = is_ci_sring(a, CI_SRING_CAP)?.ci;
        self.0.insert(key, v);
        Ok(v)
    }
}

fn ci_wreath(id: &str, g: &Group, t: &mut Tally) -> Result<()> {
    let mut memo = CiMemo(HashMap::new());
    for a in srings(g)? {
        let subs = a.a_subgroups();
        let mut applicable = false;
        for l in subs.iter().filter(|l| !l.is_trivial()) {
            for u in subs.iter().filter(|u| u.order() < g.order() && l.is_subset_of(u)) {
                if !generalized_wreath_check(&a, u, l)?.holds() {
                    continue;
                }
                let (au, _) = a.restriction(u)?;
                let (aq, sq) = a.quotient_by(l)?;
                let (as_, _) = a.section_ring(u, l)?;
                if !memo.ci(&au)? || !memo.ci(&aq)? {
                    continue;
                }
                let hypothesis = match id {
                    "CorCiWp" => as_.rank() == as_.group().order(),
                    "LemmaCiGwp" => {
                        let s = aq
                            .group()
                            .subgroup_from_members(&sq.project_set(u.members()).expect("U"))
                            .expect("subgroup");
                        let mut found = false;
                        for h in aq.a_subgroups() {
                            if h.order() * s.order() == aq.group().order()
                                && h.intersect(&s).is_trivial()
                                && star_check(&aq, &s, &h)?.kind == DecompositionKind::Tensor
                            {
                                found = true;
                                break;
                            }
                        }
                        found
                    }
                    "PropCiCaymin" => {
                        (is_cyclotomic(&au)? || is_cyclotomic(&aq)?) && is_cyclotomic(&as_)? && is_cayley_minimal(&as_)?
                    }
                    _ => kr_condition(&a, u, l)?.holds,
                };
                if !hypothesis {
                    continue;
                }
                applicable = true;
                let ci = memo.ci(&a)?;
                t.check(ci, || json!({ "sring": a.to_json(), "U": subgroup_json(g, u), "L": subgroup_json(g, l) }));
            }
        }
        if !applicable {
            t.skip();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn groups(names: &[&str]) -> Scope {
        Scope { groups: Some(named(names).unwrap()), ..Scope::default() }
    }

    #[test]
    fn prop_w_on_cyclic_groups() {
        let r = run_check("PropW", &groups(&["Z6", "Z10", "Z12", "Z15"])).unwrap();
        assert!(r.ok() && r.passed > 0, "{r:?}");
    }

    #[test]
    fn two_p_srings() {
        let r = run_check("EqP2P", &Scope { p: Some(3), ..Scope::default() }).unwrap();
        assert_eq!((r.passed, r.failed), (1, 0));
        let r = run_check("EqP2P", &Scope { p: Some(2), ..Scope::default() }).unwrap();
        assert_eq!((r.passed, r.failed), (1, 0));
    }

    #[test]
    fn dobson_witte_for_two() {
        let r = run_check("PropDW", &Scope { p: Some(2), ..Scope::default() }).unwrap();
        assert!(r.ok() && r.passed > 0, "{r:?}");
    }

    #[test]
    fn unknown_id() {
        assert_eq!(run_check("Nope", &Scope::default()), Err(Error::UnknownStatement("Nope".into())));
    }

    #[test]
    fn layer_definition_matches_library() {
        let g = Group::new(&[2, 4]).unwrap();
        let x: Vec<Elem> = vec![1, 2, 5, 6];
        let a = SchurRing::discrete(&g);
        assert_eq!(sw_layer_def(&g, &x, 2, 1), a.sw_layer(&x, 2, Some(1)).unwrap());
    }
}
