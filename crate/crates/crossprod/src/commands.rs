//! The work behind each CLI command, on already-loaded data.

use crossprod_core::crossed_product::{default_candidates, search_degeneracy, search_strong_degeneracy, Exhausted};
use crossprod_core::graded::HomogeneousElement;
use crossprod_core::{
    bezout_certificate, power_witness, validate_relations, AlgebraElement, CompositeExtension, CrossedProduct,
    DegeneracyPairWitness, Error, FieldElement, GaloisExtension, GenericCrossedProduct, GradedContext,
    GroupExponent, Hilbert90, SearchOutcome, StrongDegeneracyWitness,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::{CompositeSpec, Fixture, Over};
use crate::report::{Report, Section, Status};

pub fn fmt_elem(ext: &GaloisExtension, x: &FieldElement) -> String {
    ext.display(x)
}

fn paren(ext: &GaloisExtension, xs: &[FieldElement]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| ext.display(x)).collect();
    format!("({})", parts.join(", "))
}

pub fn fmt_strong(ext: &GaloisExtension, w: &StrongDegeneracyWitness) -> String {
    format!("m={}, l={}, x={}", w.m, ext.display(&w.l), paren(ext, &w.x))
}

pub fn fmt_pair(ext: &GaloisExtension, w: &DegeneracyPairWitness) -> String {
    format!("m={}, n={}, a={}, b={}", w.m, w.n, ext.display(&w.a), ext.display(&w.b))
}

fn power_name(q: usize) -> String {
    match q {
        2 => "square".into(),
        3 => "cube".into(),
        _ => format!("{q}-th power"),
    }
}

fn random_element(rng: &mut ChaCha8Rng, ext: &GaloisExtension) -> FieldElement {
    loop {
        let coords = (0..ext.dim()).map(|_| crossprod_core::scalar::int(rng.gen_range(-4..=4))).collect();
        let x = FieldElement::new(coords);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_algebra_element(rng: &mut ChaCha8Rng, alg: &CrossedProduct) -> AlgebraElement {
    let grp = alg.ext().group();
    let mut out = AlgebraElement::zero();
    for _ in 0..2 {
        let g = grp.element(rng.gen_range(0..grp.size()));
        out = alg.add(&out, &alg.monomial(random_element(rng, alg.ext()), g));
    }
    out
}

/// `Some(alg)` when the presentation passes; otherwise the section explains.
fn build_algebra(fx: &Fixture, section: &mut Section) -> Option<CrossedProduct> {
    match CrossedProduct::new(fx.ext.clone(), fx.data.clone()) {
        Ok(alg) => Some(alg),
        Err(Error::Validation(report)) => {
            section.absorb(&report);
            None
        }
        Err(e) => {
            section.check("algebra", false, e.to_string());
            None
        }
    }
}

/// Central element `l z^m`, its `q`-th power and the extraction back.
/// Returns the headline fragment on success.
fn round_trip(alg: &CrossedProduct, w: &StrongDegeneracyWitness, section: &mut Section) -> Option<String> {
    let ext = alg.ext();
    let run = || -> crossprod_core::Result<(String, String, bool)> {
        let q = alg.prime_order(&w.m)?;
        let y = alg.witness_to_central_element(w)?;
        let power = alg.pow(&y, q as u32)?;
        let power_text = match power.as_monomial() {
            Some((g, c)) if g.is_zero() => match ext.as_scalar(c) {
                Some(s) => crossprod_core::scalar::format(&s),
                None => ext.display(c),
            },
            _ => alg.display(&power),
        };
        let back = alg.central_element_to_witness(&w.l, &w.m)?;
        let ok = alg.check_strong_witness(&back)?;
        Ok((alg.display(&y), format!("{} = {power_text}", power_name(q)), ok))
    };
    match run() {
        Ok((central, power, ok)) => {
            section.check("central element", true, format!("{central}, not central, {power} (central)"));
            section.check("extraction", ok, "witness recovered from l z^m passes the checker");
            ok.then(|| format!("central element {central}, {power}"))
        }
        Err(e) => {
            section.check("round trip", false, e.to_string());
            None
        }
    }
}

// ---- validate ----------------------------------------------------------------

pub fn validate(fx: &Fixture, seed: u64, samples: usize) -> Report {
    let mut report = Report::new("validate", &fx.name, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ext = &fx.ext;

    let mut field = Section::new("field");
    let probes: Vec<FieldElement> = (0..samples.min(8)).map(|_| random_element(&mut rng, ext)).collect();
    match ext.validate(&probes) {
        Ok(r) => {
            field.absorb(&r);
        }
        Err(e) => {
            field.check("field", false, e.to_string());
        }
    }
    report.push(field);

    let mut relations = Section::new("relations");
    let ok = match validate_relations(ext, &fx.data) {
        Ok(r) => relations.absorb(&r),
        Err(e) => relations.check("cocycle data", false, e.to_string()),
    };
    report.push(relations);
    if !ok || report.failed() {
        return report;
    }
    let mut setup = Section::new("algebra");
    let Some(alg) = build_algebra(fx, &mut setup) else {
        report.push(setup);
        return report;
    };

    let mut table = Section::new("cocycle table");
    let size = ext.group().size();
    table.info("entries", format!("{} = |G|^2", alg.cocycle_table().len()));
    let violations = alg.cocycle_identity_violations();
    table.check(
        "2-cocycle identity",
        violations.is_empty(),
        match violations.first() {
            None => format!("all {} triples", size * size * size),
            Some([g, h, k]) => format!("{} of {} triples fail, first {g} {h} {k}", violations.len(), size.pow(3)),
        },
    );
    let grp = ext.group();
    let normalized = grp.elements().all(|g| {
        *alg.cocycle(&grp.identity(), &g) == ext.one() && *alg.cocycle(&g, &grp.identity()) == ext.one()
    });
    table.check("normalized", normalized, "c(1, g) = c(g, 1) = 1");
    report.push(table);

    let mut random = Section::new("random checks");
    let mut assoc_ok = true;
    for _ in 0..samples {
        let (a, b, c) =
            (random_algebra_element(&mut rng, &alg), random_algebra_element(&mut rng, &alg), random_algebra_element(&mut rng, &alg));
        let lhs = alg.mul(&alg.mul(&a, &b).unwrap(), &c).unwrap();
        let rhs = alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap();
        assoc_ok &= lhs == rhs;
    }
    random.check("associativity", assoc_ok, format!("{samples} random triples"));
    let mut h90_ok = true;
    let primes = grp.prime_order_elements();
    for (m, _) in &primes {
        for _ in 0..samples {
            let x = random_element(&mut rng, ext);
            let c = ext.div(&ext.act(m, &x), &x).expect("x is nonzero");
            let norm_one = ext.norm_along(m, &c).map(|n| n == ext.one()).unwrap_or(false);
            let solved = match ext.hilbert90_solve(m, &c) {
                Ok(Hilbert90::Solution(y)) => ext.act(m, &y) == ext.mul(&c, &y),
                _ => false,
            };
            h90_ok &= norm_one && solved;
        }
    }
    random.check(
        "Hilbert 90",
        h90_ok,
        format!("N_m(sigma^m(x)/x) = 1 and solved, {} exponents x {samples} samples", primes.len()),
    );
    report.push(random);

    let mut stored = Section::new("stored witnesses");
    for (i, w) in fx.strong.iter().enumerate() {
        let ok = alg.check_strong_witness(w).unwrap_or(false);
        stored.check(format!("strong #{}", i + 1), ok, fmt_strong(ext, w));
    }
    for (i, w) in fx.pair.iter().enumerate() {
        let ok = alg.check_pair_witness(w).unwrap_or(false);
        stored.check(format!("pair #{}", i + 1), ok, fmt_pair(ext, w));
    }
    if !stored.rows.is_empty() {
        report.push(stored);
    }
    report
}

// ---- analyze -----------------------------------------------------------------

fn exhausted_detail(ex: &Exhausted) -> String {
    format!("{} exponents x {} candidates: {}", ex.exponents, ex.candidates, Exhausted::DISCLAIMER)
}

pub fn analyze(fx: &Fixture, budget_l: Option<usize>, seed: u64) -> Report {
    let mut report = Report::new("analyze", &fx.name, seed);
    let mut setup = Section::new("algebra");
    let Some(alg) = build_algebra(fx, &mut setup) else {
        report.summary.push("presentation fails validation".into());
        report.push(setup);
        return report;
    };
    let ext = alg.ext();
    let all = default_candidates(ext);
    let mut candidates = all.clone();
    if let Some(n) = budget_l {
        candidates.truncate(n);
    }
    setup.info("candidates", format!("{} of {} default candidates for l", candidates.len(), all.len()));
    report.push(setup);

    let mut strong = Section::new("strong degeneracy search");
    match search_strong_degeneracy(&alg, &candidates) {
        Ok(SearchOutcome::Found(w)) => {
            strong.check("witness", true, fmt_strong(ext, &w));
            let tail = round_trip(&alg, &w, &mut strong);
            report.summary.push(format!(
                "search: strongly degenerate; witness {}{}",
                fmt_strong(ext, &w),
                tail.map(|t| format!("; {t}")).unwrap_or_default()
            ));
        }
        Ok(SearchOutcome::Exhausted(ex)) => {
            strong.row("search", Status::Exhausted, exhausted_detail(&ex));
            report.summary.push(format!("search: nothing found among {} candidates; this is not a proof of non-degeneracy", ex.candidates));
        }
        Err(e) => {
            strong.check("search", false, e.to_string());
        }
    }
    report.push(strong);

    if !fx.strong.is_empty() || !fx.pair.is_empty() {
        let mut stored = Section::new("stored witnesses");
        for (i, w) in fx.strong.iter().enumerate() {
            let ok = alg.check_strong_witness(w).unwrap_or(false);
            stored.check(format!("strong #{}", i + 1), ok, fmt_strong(ext, w));
            if ok {
                if let Some(tail) = round_trip(&alg, w, &mut stored) {
                    report.summary.push(format!("stored: strongly degenerate; witness {}; {tail}", fmt_strong(ext, w)));
                }
                match alg.strong_to_pair_witness(w) {
                    Ok(p) => {
                        let ok = alg.check_pair_witness(&p).unwrap_or(false);
                        stored.check("implied pair", ok, fmt_pair(ext, &p));
                    }
                    Err(Error::Precondition(msg)) => {
                        stored.info("implied pair", msg);
                    }
                    Err(e) => {
                        stored.check("implied pair", false, e.to_string());
                    }
                }
            }
        }
        for (i, w) in fx.pair.iter().enumerate() {
            let ok = alg.check_pair_witness(w).unwrap_or(false);
            stored.check(format!("pair #{}", i + 1), ok, fmt_pair(ext, w));
        }
        report.push(stored);
    }

    let mut pair = Section::new("degeneracy pair search");
    if ext.group().is_cyclic() {
        pair.info("pairs", "G is cyclic: no noncyclic pairs exist");
    } else {
        match search_degeneracy(&alg, &candidates) {
            Ok(SearchOutcome::Found(w)) => {
                pair.check("witness", true, fmt_pair(ext, &w));
                let grp = ext.group();
                if grp.rank() == 2 && grp.orders()[0] == grp.orders()[1] && w.m == grp.generator(0) && w.n == grp.generator(1) {
                    let ok = alg.rank2_igk_witness_check(&w.a, &w.b).unwrap_or(false);
                    pair.check("u12 in I[G]K*", ok, "u12 = sigma_1(a)/a * sigma_2(b)/b");
                }
            }
            Ok(SearchOutcome::Exhausted(ex)) => {
                pair.info("search", exhausted_detail(&ex));
            }
            Err(e) => {
                pair.check("search", false, e.to_string());
            }
        }
    }
    report.push(pair);

    report.push(generic_section(&alg, fx, &candidates));
    report
}

fn generic_section(alg: &CrossedProduct, fx: &Fixture, candidates: &[FieldElement]) -> Section {
    let mut section = Section::new("generic crossed product");
    let gen = GenericCrossedProduct::new(alg.clone());
    let equivalence = |section: &mut Section, l: &FieldElement, m: &GroupExponent, what: &str| {
        match gen.monomial_equivalence(l, m) {
            Ok((a, b)) => {
                section.check(
                    format!("{what} equivalence"),
                    a == b,
                    format!("l s^m p-power central: {a}; l z^m q-power central: {b}"),
                );
            }
            Err(e) => {
                section.check(format!("{what} equivalence"), false, e.to_string());
            }
        }
    };
    match gen.monomial_p_central_search(candidates, true) {
        Ok(SearchOutcome::Found(pm)) => {
            let mono = gen.monomial(pm.l.clone(), pm.m.0.clone());
            section.check("p-power central monomial", true, format!("{} (p = {})", gen.display(&mono), pm.p));
            equivalence(&mut section, &pm.l, &pm.m, "search hit");
        }
        Ok(SearchOutcome::Exhausted(ex)) => {
            section.info("search", exhausted_detail(&ex));
        }
        Err(Error::Precondition(msg)) => {
            section.info("search", format!("skipped: {msg}"));
            return section;
        }
        Err(e) => {
            section.check("search", false, e.to_string());
        }
    }
    for (i, w) in fx.strong.iter().enumerate() {
        if alg.check_strong_witness(w).unwrap_or(false) {
            let mono = gen.monomial(w.l.clone(), w.m.0.clone());
            let p = alg.prime_order(&w.m).unwrap_or(0) as u32;
            let ok = gen.is_p_power_central(&mono, p).unwrap_or(false);
            section.check(
                format!("stored #{} image", i + 1),
                ok,
                format!("{} is {}-power central", gen.display(&mono), p),
            );
            equivalence(&mut section, &w.l, &w.m, &format!("stored #{}", i + 1));
        }
    }
    section
}

// ---- descend -----------------------------------------------------------------

pub fn descend(
    fx: &Fixture,
    spec: &CompositeSpec,
    witness: Option<(Over, StrongDegeneracyWitness)>,
    e: i64,
    seed: u64,
) -> Report {
    let mut report = Report::new("descend", &format!("{} over {}", fx.name, spec.name), seed);
    let abort = |report: &mut Report, section: Section, stage: &str| {
        let why = section.rows.iter().rev().find(|r| r.status == Status::Fail).map(|r| r.detail.clone()).unwrap_or_default();
        report.summary.push(format!("aborted at {stage}: {why}"));
        report.push(section);
    };

    let mut s1 = Section::new("stage 1: extend");
    let comp: CompositeExtension = match spec.build(&fx.ext) {
        Ok(c) => c,
        Err(err) => {
            s1.check("composite", false, err.to_string());
            abort(&mut report, s1, "stage 1 (extend)");
            return report;
        }
    };
    s1.absorb(comp.report());
    s1.info("degrees", format!("t = [E:Q] = {}, [KE:Q] = {}", comp.t(), comp.ke().dim()));
    let Some(alg) = build_algebra(fx, &mut s1) else {
        abort(&mut report, s1, "stage 1 (extend)");
        return report;
    };
    let extended = match comp.extend(&alg) {
        Ok(a) => {
            s1.check("relations over KE", true, "u and b satisfy the relations in KE");
            a
        }
        Err(err) => {
            s1.check("relations over KE", false, err.to_string());
            abort(&mut report, s1, "stage 1 (extend)");
            return report;
        }
    };
    report.push(s1);

    let mut s2 = Section::new("stage 2: check");
    let w = match witness {
        Some((Over::KE, w)) => w,
        Some((Over::K, w)) => comp.embed_witness(&w),
        None => match fx.strong.first() {
            Some(w) => comp.embed_witness(w),
            None => {
                s2.check("witness", false, "no witness given and the fixture stores none");
                abort(&mut report, s2, "stage 2 (check)");
                return report;
            }
        },
    };
    let ke = comp.ke();
    let ok = extended.check_strong_witness(&w);
    if !matches!(ok, Ok(true)) {
        s2.check("witness over KE", false, format!("{} fails the checker", fmt_strong(ke, &w)));
        abort(&mut report, s2, "stage 2 (check)");
        return report;
    }
    s2.check("witness over KE", true, fmt_strong(ke, &w));
    report.push(s2);

    let mut s3 = Section::new("stage 3: norm-descend");
    let t = comp.t();
    let down = match comp.norm_descend_witness(&alg, &w) {
        Ok(d) => d,
        Err(err) => {
            s3.check("norm descent", false, err.to_string());
            abort(&mut report, s3, "stage 3 (norm-descend)");
            return report;
        }
    };
    let route = if comp.rel_gal_complete() {
        "determinant over K, matched by the product over Gal(KE/K)"
    } else {
        "determinant over K (KE/K not given as Galois)"
    };
    s3.info("norm", route);
    let power_t = alg.power(t as u64).expect("powers of a valid cocycle are valid");
    let ok = power_t.check_strong_witness(&down).unwrap_or(false);
    s3.check(format!("witness for u^{t}"), ok, fmt_strong(&fx.ext, &down));
    report.push(s3);

    let mut s4 = Section::new("stage 4: bezout");
    let (k, l) = match bezout_certificate(t as i64, e) {
        Ok(kl) => kl,
        Err(err) => {
            s4.check("certificate", false, err.to_string());
            abort(&mut report, s4, "stage 4 (bezout)");
            return report;
        }
    };
    s4.check("certificate", t as i64 * k + e * l == 1, format!("{t}*{k} + {e}*({l}) = 1"));
    report.push(s4);

    let mut s5 = Section::new("stage 5: power");
    match power_witness(&power_t, &down, k) {
        Ok((target, out)) => {
            let ok = target.check_strong_witness(&out).unwrap_or(false);
            s5.check(format!("witness for u^{}", t as i64 * k), ok, fmt_strong(&fx.ext, &out));
            report.summary.push(format!(
                "descended: u^{} is strongly degenerate over K with witness {}",
                t as i64 * k,
                fmt_strong(&fx.ext, &out)
            ));
        }
        Err(err) => {
            s5.check("power", false, err.to_string());
            abort(&mut report, s5, "stage 5 (power)");
            return report;
        }
    }
    s5.info(
        "not covered",
        format!(
            "from u^{} back to u needs an explicit isomorphism between the two algebras (they are only Brauer equivalent); none is constructed",
            t as i64 * k
        ),
    );
    report.push(s5);
    report
}

// ---- graded ------------------------------------------------------------------

fn homog_text(ctx: &GradedContext, h: &HomogeneousElement) -> String {
    let ext = ctx.ext();
    let mut parts = Vec::new();
    if h.coeff != ext.one() {
        let c = ext.display(&h.coeff);
        let terms = h.coeff.coords().iter().filter(|c| **c != crossprod_core::scalar::zero()).count();
        parts.push(if terms > 1 { format!("({c})") } else { c });
    }
    if !h.m.is_zero() {
        parts.push(format!("g({})", crossprod_core::crossed_product::monomial_label(&h.m)));
    }
    let xs: String = h
        .w
        .iter()
        .enumerate()
        .filter(|(_, &w)| w != 0)
        .map(|(i, &w)| if w == 1 { format!("x{}", i + 1) } else { format!("x{}^{w}", i + 1) })
        .collect();
    if !xs.is_empty() {
        parts.push(format!("g({xs})"));
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    parts.join(" ")
}

pub fn graded(fx: &Fixture, seed: u64) -> Report {
    let mut report = Report::new("graded", &fx.name, seed);
    let mut audit = Section::new("semiramification");
    let Some(alg) = build_algebra(fx, &mut audit) else {
        report.push(audit);
        return report;
    };
    let ctx = GradedContext::new(alg.clone());
    match ctx.semiramification_report() {
        Ok(r) => {
            audit.absorb(&r);
        }
        Err(e) => {
            audit.check("rejected", false, e.to_string());
            report.push(audit);
            return report;
        }
    }
    report.push(audit);

    let mut theta = Section::new("theta");
    for (m, v, t) in ctx.theta_table() {
        let ok = m == t;
        theta.check(format!("z^{m}"), ok, format!("value {v} -> theta {t}"));
    }
    report.push(theta);

    let mut residue = Section::new("residue cocycle");
    match ctx.standard_residue_cocycle() {
        Ok(res) => {
            residue.absorb(&res.report);
            residue.check("round trip", &res.data == alg.cocycle_data(), "residues of g(z_i), g(x_i) give back (u, b)");
        }
        Err(e) => {
            residue.check("residue cocycle", false, e.to_string());
        }
    }
    report.push(residue);

    let ext = alg.ext();
    let mut single = Section::new("power central elements");
    for (i, w) in fx.strong.iter().enumerate() {
        match ctx.witness_to_homogeneous(w) {
            Ok(h) => {
                let v = ctx.value_of(&h);
                let q = alg.prime_order(&w.m).unwrap_or(0);
                single.check(
                    format!("stored #{} image", i + 1),
                    true,
                    format!("{} is {q}-power central with value {v} outside Gamma_F", homog_text(&ctx, &h)),
                );
                report.summary.push(format!("witness {} -> {} of value {v}", fmt_strong(ext, w), homog_text(&ctx, &h)));
            }
            Err(e) => {
                single.check(format!("stored #{} image", i + 1), false, e.to_string());
            }
        }
    }
    for (i, h) in fx.graded_elements.iter().enumerate() {
        let name = format!("element #{}", i + 1);
        if let Err(e) = ctx.check(h) {
            single.check(name, false, e.to_string());
            continue;
        }
        let Ok(q) = alg.prime_order(&h.m) else {
            single.info(name, format!("{}: z^m is not of prime order", homog_text(&ctx, h)));
            continue;
        };
        match ctx.qpower_central_homog_check(h, q as u32) {
            Ok(pc) if pc.central && !pc.in_gamma_f => {
                let back = ctx.homog_to_witness(h).and_then(|w| Ok((alg.check_strong_witness(&w)?, w)));
                match back {
                    Ok((ok, w)) => {
                        single.check(
                            name,
                            ok,
                            format!("{} value {}, {}-power central -> witness {}", homog_text(&ctx, h), pc.value, q, fmt_strong(ext, &w)),
                        );
                    }
                    Err(e) => {
                        single.check(name, false, e.to_string());
                    }
                }
            }
            Ok(pc) => {
                single.info(
                    name,
                    format!("{} value {}: {}-th power central {}, in Gamma_F {}", homog_text(&ctx, h), pc.value, q, pc.central, pc.in_gamma_f),
                );
            }
            Err(e) => {
                single.check(name, false, e.to_string());
            }
        }
    }
    report.push(single);

    let mut pairs = Section::new("graded pairs");
    for (i, (h1, h2)) in fx.graded_pairs.iter().enumerate() {
        let name = format!("pair #{}", i + 1);
        let text = format!("{}, {}", homog_text(&ctx, h1), homog_text(&ctx, h2));
        match ctx.graded_pair_degeneracy_check(h1, h2) {
            Ok(gp) => match gp.witness {
                Some(w) => {
                    let ok = alg.check_pair_witness(&w).unwrap_or(false);
                    pairs.check(name, ok, format!("{text} commute -> {}", fmt_pair(ext, &w)));
                }
                None => {
                    pairs.info(name, format!("{text}: commute {}, noncyclic {}", gp.commute, gp.noncyclic));
                }
            },
            Err(e) => {
                pairs.check(name, false, e.to_string());
            }
        }
    }
    for (i, w) in fx.pair.iter().enumerate() {
        let name = format!("stored pair #{}", i + 1);
        let res = ctx
            .pair_witness_to_homogeneous(w)
            .and_then(|(h1, h2)| Ok((ctx.graded_pair_degeneracy_check(&h1, &h2)?, h1, h2)));
        match res {
            Ok((gp, h1, h2)) => {
                pairs.check(
                    name,
                    gp.commute && gp.noncyclic,
                    format!("{} -> {}, {} commute", fmt_pair(ext, w), homog_text(&ctx, &h1), homog_text(&ctx, &h2)),
                );
            }
            Err(e) => {
                pairs.check(name, false, e.to_string());
            }
        }
    }
    if pairs.rows.is_empty() {
        pairs.info("pairs", "none configured");
    }
    report.push(pairs);
    report
}
