//! Independent certificate checking. Everything is recomputed from the
//! serialized inputs with permutation-group primitives only: the amalgam
//! reduction, the closedness search and the series arithmetic used by the
//! producers are not called here.

use std::sync::Arc;

use crate::certificate::{
    closedness_claims, free_word_claims, power_stage_claims, CertificateData, CertificateInputs,
    CertificateKind, ClosednessData, ClosednessFacts, ClosednessInputs, FreeWordData,
    FreeWordInputs, GroupRecord, PowerStageData, PowerStageFacts, PowerStageInputs,
    SeparationCertificate, Verdict, FORMAT_VERSION,
};
use crate::class::RootClassSpec;
use crate::error::{Error, Result};
use crate::group::{classify, is_power_of, is_prime, PermGroup, DEFAULT_ORDER_CAP};
use crate::hom::quotient;
use crate::perm::Perm;
use crate::subgroup::{transversal, Subgroup};

const MAX_RANK: usize = 4;
const MAX_DEGREE: usize = 8;

/// Parses and checks a certificate. Unparseable or structurally inconsistent
/// payloads are errors; well-formed certificates yield a verdict.
pub fn verify_json(text: &str) -> Result<Verdict> {
    let cert = SeparationCertificate::from_json(text)?;
    verify_certificate(&cert)
}

pub fn verify_certificate(cert: &SeparationCertificate) -> Result<Verdict> {
    let mut v = Checks::default();
    v.require(
        cert.format_version == FORMAT_VERSION,
        format!("unsupported format_version {}", cert.format_version),
    );
    match (cert.kind, &cert.inputs, &cert.data) {
        (
            CertificateKind::PowerStage,
            CertificateInputs::PowerStage(inputs),
            CertificateData::PowerStage(data),
        ) => {
            let class = cert
                .class
                .ok_or_else(|| Error::Malformed("power_stage certificate without class".into()))?;
            power_stage(&mut v, class, inputs, data, &cert.claims)?;
        }
        (
            CertificateKind::FreeWord,
            CertificateInputs::FreeWord(inputs),
            CertificateData::FreeWord(data),
        ) => free_word(&mut v, cert.class, inputs, data, &cert.claims)?,
        (
            CertificateKind::ClosednessWitness,
            CertificateInputs::ClosednessWitness(inputs),
            CertificateData::ClosednessWitness(data),
        ) => {
            let class = cert.class.ok_or_else(|| {
                Error::Malformed("closedness_witness certificate without class".into())
            })?;
            closedness(&mut v, class, inputs, data, &cert.claims)?;
        }
        (kind, _, _) => {
            return Err(Error::Malformed(format!(
                "inputs and data do not match kind {kind:?}"
            )))
        }
    }
    Ok(v.finish())
}

#[derive(Default)]
struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn require(&mut self, ok: bool, msg: impl Into<String>) -> bool {
        if !ok {
            self.failures.push(msg.into());
        }
        ok
    }

    fn finish(self) -> Verdict {
        Verdict {
            accepted: self.failures.is_empty(),
            failures: self.failures,
        }
    }
}

fn rebuild_group(rec: &GroupRecord) -> Result<Arc<PermGroup>> {
    PermGroup::generate_named(
        rec.degree,
        rec.generators.keys().cloned().collect(),
        rec.generators.values().cloned().collect(),
        DEFAULT_ORDER_CAP,
    )
}

/// Rebuilds a subgroup and checks its generators are the canonical ones.
fn canonical_subgroup(
    v: &mut Checks,
    group: &Arc<PermGroup>,
    gens: &[Perm],
    what: &str,
) -> Result<Option<Subgroup>> {
    if gens.iter().any(|g| !group.contains(g)) {
        v.require(false, format!("{what}: a generator lies outside A"));
        return Ok(None);
    }
    let sub = Subgroup::generated(group, gens)?;
    if !v.require(
        sub.generators() == gens,
        format!("{what}: generators are not canonical"),
    ) {
        return Ok(None);
    }
    Ok(Some(sub))
}

fn quotient_in_class(class: RootClassSpec, q: &Arc<PermGroup>) -> bool {
    match class {
        RootClassSpec::AllFinite => true,
        RootClassSpec::FiniteP(p) => is_power_of(q.order() as u64, p),
        RootClassSpec::FiniteSolvable => classify(q).is_solvable,
    }
}

/// `x ∈ HN` iff `h^-1 x ∈ N` for some `h ∈ H`.
fn in_product(h: &Subgroup, n: &Subgroup, x: &Perm) -> bool {
    h.elements().any(|y| n.contains(&y.inv().mul(x)))
}

/// Naive reduction in a power `G *_K ... *_K G` with identity gluing maps:
/// merge equal-copy neighbours, fold `K`-syllables into a neighbour, drop
/// identities. The length of the result is the syllable length.
fn naive_reduce(k: &Subgroup, word: &[(usize, Perm)]) -> Vec<(usize, Perm)> {
    let mut st: Vec<(usize, Perm)> = Vec::new();
    for s in word {
        st.push(s.clone());
        loop {
            let n = st.len();
            if n > 0 && st[n - 1].1.is_identity() {
                st.pop();
                continue;
            }
            if n >= 2 {
                let (c1, x1) = st[n - 2].clone();
                let (c2, x2) = st[n - 1].clone();
                let (in1, in2) = (k.contains(&x1), k.contains(&x2));
                if c1 == c2 || in1 || in2 {
                    let copy = if in2 && !in1 { c1 } else { c2 };
                    st.truncate(n - 2);
                    st.push((copy, x1.mul(&x2)));
                    continue;
                }
            }
            break;
        }
    }
    st
}

fn syllable_length(k: &Subgroup, reduced: &[(usize, Perm)]) -> usize {
    match reduced {
        [(_, x)] if k.contains(x) => 0,
        _ => reduced.len(),
    }
}

fn power_stage(
    v: &mut Checks,
    class: RootClassSpec,
    inputs: &PowerStageInputs,
    data: &PowerStageData,
    claims: &[String],
) -> Result<()> {
    let rec = &inputs.scheme;
    if !v.require(rec.power >= 2, "a free power needs at least two copies") {
        return Ok(());
    }
    let a = rebuild_group(&rec.factor)?;
    let Some(h) = canonical_subgroup(v, &a, &rec.subgroup, "H")? else {
        return Ok(());
    };
    for (i, s) in inputs.word.syllables.iter().enumerate() {
        if !v.require(
            s.copy < rec.power && a.contains(&s.elt),
            format!("syllable {i} is not an element of a copy of A"),
        ) {
            return Ok(());
        }
    }
    let word: Vec<(usize, Perm)> = inputs
        .word
        .syllables
        .iter()
        .map(|s| (s.copy, s.elt.clone()))
        .collect();
    let reduced = naive_reduce(&h, &word);
    if !v.require(!reduced.is_empty(), "g is the identity of Q") {
        return Ok(());
    }
    let s = syllable_length(&h, &reduced);
    v.require(
        s == data.source_length,
        format!("g has length {s}, not {}", data.source_length),
    );

    let Some(n) = canonical_subgroup(v, &a, &data.kernel, "N")? else {
        return Ok(());
    };
    if !v.require(n.is_normal(), "N is not normal in A") {
        return Ok(());
    }
    let (q, proj) = quotient(&n)?;
    v.require(
        q.order() == data.quotient_order,
        format!("A/N has order {}, not {}", q.order(), data.quotient_order),
    );
    v.require(quotient_in_class(class, &q), format!("A/N is not in class {class}"));

    let mut witness_orders = Vec::new();
    if s > 1 {
        if !v.require(
            data.syllable_witnesses.len() == s,
            format!("{} syllable witnesses for length {s}", data.syllable_witnesses.len()),
        ) {
            return Ok(());
        }
        let mut running: Option<Subgroup> = None;
        for (i, (gens, (_, x))) in data.syllable_witnesses.iter().zip(&reduced).enumerate() {
            let Some(ni) = canonical_subgroup(v, &a, gens, &format!("N_{}", i + 1))? else {
                return Ok(());
            };
            if !v.require(ni.is_normal(), format!("N_{} is not normal", i + 1)) {
                return Ok(());
            }
            let (qi, _) = quotient(&ni)?;
            witness_orders.push(qi.order());
            v.require(
                quotient_in_class(class, &qi),
                format!("A/N_{} is not in class {class}", i + 1),
            );
            v.require(
                !in_product(&h, &ni, x),
                format!("syllable {} lies in H N_{}", i + 1, i + 1),
            );
            let meet = match running {
                None => ni,
                Some(prev) => prev.intersect(&ni)?,
            };
            let (qm, _) = quotient(&meet)?;
            v.require(
                quotient_in_class(class, &qm),
                format!("A/(N_1 ∩ .. ∩ N_{}) is not in class {class}", i + 1),
            );
            running = Some(meet);
        }
        let meet = running.expect("s > 1 witnesses");
        v.require(meet == n, "N is not the intersection of the syllable witnesses");
    } else {
        v.require(
            data.syllable_witnesses.is_empty(),
            "syllable witnesses given for length at most 1",
        );
        let x = &reduced[0].1;
        v.require(!n.contains(x), format!("{x} lies in N"));
    }

    let img = &data.image;
    let qh = Subgroup::generated(
        &q,
        &h.generators()
            .iter()
            .map(|g| proj.apply(g))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let reps = transversal(&qh);
    v.require(img.length == img.tail.len(), "image length disagrees with its tail");
    if s > 1 {
        v.require(img.length == s, format!("image length {} is not {s}", img.length));
    } else {
        v.require(img.length <= 1, "image of a factor element is longer than 1");
    }
    if !v.require(
        img.head.degree() == q.degree() && qh.contains(&img.head),
        "image head is not in HN/N",
    ) {
        return Ok(());
    }
    for (i, t) in img.tail.iter().enumerate() {
        let ok = t.copy < rec.power
            && t.elt.degree() == q.degree()
            && !t.elt.is_identity()
            && reps.contains(&t.elt)
            && (i == 0 || img.tail[i - 1].copy != t.copy);
        if !v.require(ok, format!("image syllable {i} is not a canonical coset representative")) {
            return Ok(());
        }
    }
    v.require(
        img.length > 0 || !img.head.is_identity(),
        "image is the identity of Q_N",
    );
    let mut check: Vec<(usize, Perm)> = img
        .tail
        .iter()
        .rev()
        .map(|t| (t.copy, t.elt.inv()))
        .collect();
    check.push((0, img.head.inv()));
    for (c, x) in &word {
        check.push((*c, proj.apply(x)?));
    }
    v.require(
        naive_reduce(&qh, &check).is_empty(),
        "the image form is not the image of g in Q_N",
    );

    let expected = power_stage_claims(&PowerStageFacts {
        group: &rec.factor,
        group_order: a.order(),
        subgroup: &rec.subgroup,
        subgroup_order: h.order(),
        copies: rec.power,
        word: &inputs.word,
        class,
        source_length: s,
        witnesses: &data.syllable_witnesses,
        witness_quotient_orders: &witness_orders,
        kernel: &data.kernel,
        quotient_order: q.order(),
        image: img,
    });
    v.require(expected == claims, "claims do not match the recomputed values");
    Ok(())
}

fn parse_letters(word: &str) -> Option<Vec<i32>> {
    word.split(' ')
        .map(|tok| {
            let (body, sign) = match tok.strip_suffix("^-1") {
                Some(b) => (b, -1),
                None => (tok, 1),
            };
            let idx: i32 = body.strip_prefix('x')?.parse().ok()?;
            (idx > 0 && body == format!("x{idx}")).then_some(sign * idx)
        })
        .collect()
}

/// Coefficient of `monomial` (0-based variables) in the image of the word
/// under `x_i -> 1 + t_i`, by splitting the monomial into one block per
/// letter: a positive letter takes `t^0` or `t^1`, a negative letter takes
/// `t^k` with sign `(-1)^k`.
fn coefficient(letters: &[i32], monomial: &[usize], modulus: u64) -> Option<i128> {
    let d = monomial.len();
    let mut f = vec![0i128; d + 1];
    f[0] = 1;
    for &l in letters {
        let var = l.unsigned_abs() as usize - 1;
        let mut g = vec![0i128; d + 1];
        for i in 0..=d {
            if f[i] == 0 {
                continue;
            }
            let mut k = 0;
            loop {
                let c: i128 = if l > 0 {
                    if k > 1 {
                        break;
                    }
                    1
                } else if k % 2 == 0 {
                    1
                } else {
                    -1
                };
                g[i + k] = g[i + k].checked_add(f[i].checked_mul(c)?)?;
                if modulus != 0 {
                    g[i + k] = g[i + k].rem_euclid(modulus as i128);
                }
                if i + k == d || monomial[i + k] != var {
                    break;
                }
                k += 1;
            }
        }
        f = g;
    }
    Some(f[d])
}

/// All monomials of degree `d` in `rank` variables, lexicographically.
fn monomials(rank: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..rank).map(move |v| {
                    let mut m = m.clone();
                    m.push(v);
                    m
                })
            })
            .collect();
    }
    out
}

fn free_word(
    v: &mut Checks,
    class: Option<RootClassSpec>,
    inputs: &FreeWordInputs,
    data: &FreeWordData,
    claims: &[String],
) -> Result<()> {
    let Some(letters) = parse_letters(&inputs.word) else {
        return Err(Error::Malformed(format!("free word {:?}", inputs.word)));
    };
    let reduced = letters.windows(2).all(|p| p[0] != -p[1]);
    v.require(!letters.is_empty() && reduced, "w is not freely reduced and nontrivial");
    let rank = letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
    v.require(rank == data.rank, format!("w has rank {rank}, not {}", data.rank));
    match (data.modulus, class) {
        (0, None) => {}
        (p, Some(RootClassSpec::FiniteP(q))) if p == q && is_prime(p) => {}
        _ => {
            v.require(false, "modulus and class are inconsistent");
        }
    }
    let d = data.degree;
    if !v.require(
        (1..=MAX_DEGREE).contains(&d) && (1..=MAX_RANK).contains(&rank),
        "degree or rank outside the supported range",
    ) {
        return Ok(());
    }
    if !v.require(
        data.monomial.len() == d && data.monomial.iter().all(|&x| x >= 1 && x as usize <= rank),
        "witness monomial does not have the claimed degree",
    ) {
        return Ok(());
    }
    let witness: Vec<usize> = data.monomial.iter().map(|&x| x as usize - 1).collect();
    let coeff = |m: &[usize]| coefficient(&letters, m, data.modulus).ok_or(Error::CoefficientOverflow);
    for e in 1..d {
        for m in monomials(rank, e) {
            if !v.require(coeff(&m)? == 0, format!("a monomial of degree {e} survives")) {
                return Ok(());
            }
        }
    }
    for m in monomials(rank, d).into_iter().take_while(|m| *m != witness) {
        if !v.require(coeff(&m)? == 0, "an earlier monomial of the same degree survives") {
            return Ok(());
        }
    }
    let c = coeff(&witness)?;
    v.require(
        c != 0 && c == data.coefficient as i128,
        format!("coefficient is {c}, not {}", data.coefficient),
    );
    let expected = free_word_claims(
        &inputs.word,
        data.rank,
        d,
        data.modulus,
        &data.monomial,
        data.coefficient,
    );
    v.require(expected == claims, "claims do not match the recomputed values");
    Ok(())
}

fn closedness(
    v: &mut Checks,
    class: RootClassSpec,
    inputs: &ClosednessInputs,
    data: &ClosednessData,
    claims: &[String],
) -> Result<()> {
    let a = rebuild_group(&inputs.group)?;
    let Some(h) = canonical_subgroup(v, &a, &inputs.subgroup, "H")? else {
        return Ok(());
    };
    let Some(n) = canonical_subgroup(v, &a, &data.kernel, "N")? else {
        return Ok(());
    };
    if !v.require(n.is_normal(), "N is not normal in A") {
        return Ok(());
    }
    let (q, _) = quotient(&n)?;
    v.require(quotient_in_class(class, &q), format!("A/N is not in class {class}"));
    let x = &data.element;
    if !v.require(a.contains(x) && !h.contains(x), "a does not lie in A outside H") {
        return Ok(());
    }
    v.require(!in_product(&h, &n, x), "a lies in H N");
    let expected = closedness_claims(&ClosednessFacts {
        group: &inputs.group,
        group_order: a.order(),
        subgroup: &inputs.subgroup,
        subgroup_order: h.order(),
        class,
        kernel: &data.kernel,
        quotient_order: q.order(),
        element: x,
    });
    v.require(expected == claims, "claims do not match the recomputed values");
    Ok(())
}
