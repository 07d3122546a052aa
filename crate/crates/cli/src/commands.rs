//! One function per subcommand. Mathematical failures become failed checks;
//! only unreadable or malformed input is returned as an error.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use num_complex::Complex64;

use hoffman_core::bgw::{bgw_violation, class5_construction, class5_expected, drad160, w10, Class5Construction};
use hoffman_core::biangular::{
    biangular, biangular_expected, expected_gram, inner_product_magnitudes, scheme_from_biangular, Variant,
};
use hoffman_core::digraph::{hoffman_bound, hoffman_report, verify_coclique_partition, HoffmanReport};
use hoffman_core::hadamard::{
    bush_type_violation, drad_to_skew_bush, is_normalized, skew_bush_order4, skew_bush_to_drad, skew_bush_violation,
    sylvester, BlockPartitionedHadamard, SignMatrix,
};
use hoffman_core::io::{
    parse_gauss_matrix, parse_group_ring, parse_int_matrix, parse_partition, parse_vertex_set, write_gauss_matrix,
    write_int_matrix, write_partition,
};
use hoffman_core::nrd::{check_nrd, is_drad};
use hoffman_core::scheme::{align_rows, compute_eigenmatrices, verify_eigensystem, verify_scheme};
use hoffman_core::spectral::{min_real_part, re_spectrum};
use hoffman_core::{AssociationScheme, Digraph, GaussMatrix, IntMatrix};

use crate::report::Report;

type Result<T> = anyhow::Result<T>;

/// Largest Sylvester exponent accepted on the command line.
const MAX_SYLVESTER_K: u32 = 10;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_matrix(path: &Path) -> Result<IntMatrix> {
    parse_int_matrix(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_gauss(path: &Path) -> Result<GaussMatrix> {
    parse_gauss_matrix(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_partition(path: &Path) -> Result<Vec<Vec<usize>>> {
    parse_partition(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

struct Output<'a> {
    dir: &'a Path,
    written: Vec<String>,
}

impl<'a> Output<'a> {
    fn new(dir: &'a Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Output {
            dir,
            written: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.written.push(name.to_string());
        Ok(())
    }

    fn matrix(&mut self, name: &str, m: &IntMatrix) -> Result<()> {
        self.write(name, &write_int_matrix(m))
    }

    fn scheme(&mut self, s: &AssociationScheme) -> Result<()> {
        for (i, m) in s.mats().iter().enumerate() {
            self.matrix(&format!("A{i}.mat"), m)?;
        }
        Ok(())
    }

    fn finish(self, report: &mut Report) {
        if !self.written.is_empty() {
            report.pass_with("files written", self.written.join(" "));
        }
    }
}

fn list<T: ToString>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(T::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn float(x: f64) -> String {
    let s = format!("{x:.9}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn complex(z: Complex64) -> String {
    let (re, im) = (float(z.re), float(z.im.abs()));
    if im.chars().all(|c| c == '0' || c == '.') {
        re
    } else {
        format!("{re}{}{im}i", if z.im < 0.0 { "-" } else { "+" })
    }
}

fn complex_rows(rows: &[Vec<Complex64>]) -> String {
    let rows: Vec<String> = rows
        .iter()
        .map(|r| r.iter().map(|&z| complex(z)).collect::<Vec<_>>().join(" "))
        .collect();
    rows.join("; ")
}

fn scheme_summary(s: &AssociationScheme) -> String {
    format!(
        "{} points, class {}, valencies {}, {}",
        s.n(),
        s.d(),
        list(&s.valencies()),
        if s.is_symmetric() { "symmetric" } else { "nonsymmetric" }
    )
}

/// Verifies `P`, `Q` on `s`, reordering the rows of `P` when only a
/// different pairing with the columns of `Q` satisfies `PQ = nI`.
fn check_eigensystem(
    report: &mut Report,
    s: &AssociationScheme,
    p: &GaussMatrix,
    q: &GaussMatrix,
) -> Option<GaussMatrix> {
    let direct = verify_eigensystem(s, p, q);
    if direct.is_ok() {
        report.pass("eigenmatrices P, Q");
        return Some(p.clone());
    }
    let aligned = align_rows(p, q, s.n()).ok().flatten();
    if let Some((ap, perm)) = aligned {
        if verify_eigensystem(s, &ap, q).is_ok() {
            report.pass_with(
                "eigenmatrices P, Q",
                format!("rows of P paired with columns of Q as {}", list(&perm)),
            );
            return Some(ap);
        }
    }
    report.fail("eigenmatrices P, Q", direct.unwrap_err());
    None
}

fn sign_matrix(report: &mut Report, m: IntMatrix) -> Option<SignMatrix> {
    match SignMatrix::new(m) {
        Ok(h) => {
            report.pass("entries are +1/-1");
            Some(h)
        }
        Err(e) => {
            report.fail("entries are +1/-1", e);
            None
        }
    }
}

fn hadamard_checks(report: &mut Report, h: &SignMatrix) -> bool {
    let m = h.matrix();
    if !m.is_square() {
        report.fail("square", format!("{}x{}", m.rows(), m.cols()));
        return false;
    }
    let n = m.rows();
    if n <= 2 || n % 4 == 0 {
        report.pass_with("order", n);
    } else {
        report.fail("order", format!("{n} is not 1, 2 or a multiple of 4"));
    }
    let gram = m.mul(&m.transpose()).expect("square product");
    let target = IntMatrix::identity(n).scalar_mul(n as i64).expect("small order");
    match gram.first_difference(&target) {
        None => {
            report.pass("HH^T = nI");
            true
        }
        Some((i, j)) => {
            report.fail_with("HH^T = nI", format!("cell ({i}, {j})"), gram.get(i, j));
            false
        }
    }
}

pub fn construct_sylvester(name: &str, k: u32, dir: &Path) -> Result<Report> {
    if k > MAX_SYLVESTER_K {
        bail!("k = {k} exceeds the supported maximum {MAX_SYLVESTER_K}");
    }
    let mut report = Report::new(name);
    let h = sylvester(k);
    hadamard_checks(&mut report, &h);
    report.pass_with("normalized", is_normalized(&h));
    let mut out = Output::new(dir)?;
    out.matrix("H.mat", h.matrix())?;
    out.finish(&mut report);
    Ok(report)
}

pub fn construct_biangular(
    name: &str,
    n: usize,
    variant: Variant,
    hadamard: Option<&Path>,
    dir: &Path,
) -> Result<Report> {
    let h = match hadamard {
        Some(path) => SignMatrix::new(load_matrix(path)?).with_context(|| format!("{}", path.display()))?,
        None if n.is_power_of_two() && n >= 2 => sylvester(n.trailing_zeros()),
        None => bail!("no built-in Hadamard matrix of order {n}; pass --hadamard"),
    };
    if h.order() != n {
        bail!("Hadamard matrix has order {}, expected {n}", h.order());
    }
    let mut report = Report::new(format!("{name} --n {n} --variant {variant}"));
    let b = match biangular(&h, variant) {
        Ok(b) => b,
        Err(e) => {
            report.fail("biangular matrix", e);
            return Ok(report);
        }
    };
    let mut out = Output::new(dir)?;
    out.matrix("M.mat", b.matrix())?;
    let m = b.matrix();
    let gram = m.mul(&m.transpose())?;
    let target = expected_gram(n)?;
    match gram.first_difference(&target) {
        None => report.pass("MM^T = n(n-1)I - n(I (x) (J - I))"),
        Some((i, j)) => report.fail_with(
            "MM^T = n(n-1)I - n(I (x) (J - I))",
            format!("cell ({i}, {j})"),
            gram.get(i, j),
        ),
    }
    report.outcome(
        "normalized inner products",
        inner_product_magnitudes(&b).map(|(same, cross)| format!("same block {same}, different blocks {cross}")),
    );
    match scheme_from_biangular(&b) {
        Ok(s) => {
            report.pass_with("association scheme", scheme_summary(&s));
            out.scheme(&s)?;
            let tables = biangular_expected(n, variant)?;
            if let Some(p) = check_eigensystem(&mut report, &s, &tables.p, &tables.q) {
                out.write("P.mat", &write_gauss_matrix(&p))?;
                out.write("Q.mat", &write_gauss_matrix(&tables.q))?;
            }
        }
        Err(e) => report.fail("association scheme", e),
    }
    out.finish(&mut report);
    Ok(report)
}

fn class5_outputs(report: &mut Report, c: &Class5Construction, dir: &Path) -> Result<()> {
    let blocks = 4 * c.n * c.n;
    let t = &c.twin;
    report.pass_with("G^T = -G", format!("order {}", c.g.rows()));
    report.pass_with("twin A_1 is a DRAD", t.params);
    report.pass("A_2 = A_1^T");
    report.pass_with("class-5 scheme", scheme_summary(&c.scheme));
    report.pass("product identities");
    let mut out = Output::new(dir)?;
    out.matrix("G.mat", &c.g)?;
    out.scheme(&c.scheme)?;
    let tables = class5_expected(c.n)?;
    if let Some(p) = check_eigensystem(report, &c.scheme, &tables.p, &tables.q) {
        out.write("P.mat", &write_gauss_matrix(&p))?;
        out.write("Q.mat", &write_gauss_matrix(&tables.q))?;
    }
    let parts: Vec<Vec<usize>> = (0..c.g.rows() / blocks)
        .map(|b| (b * blocks..(b + 1) * blocks).collect())
        .collect();
    out.write("blocks.txt", &write_partition(&parts))?;
    out.finish(report);
    Ok(())
}

pub fn construct_drad160(name: &str, dir: &Path) -> Result<Report> {
    let mut report = Report::new(name);
    match bgw_violation(&w10(), 9, 8) {
        None => report.pass_with("W is a BGW", "(10, 9, 8) over C_8"),
        Some(v) => report.fail("W is a BGW", v),
    }
    match drad160() {
        Ok(c) => class5_outputs(&mut report, &c, dir)?,
        Err(e) => report.fail("class-5 construction", e),
    }
    Ok(report)
}

pub fn construct_class5(name: &str, n: usize, bgw: &Path, hadamard: &Path, dir: &Path) -> Result<Report> {
    if n == 0 {
        bail!("n must be positive");
    }
    let w = parse_group_ring(&read(bgw)?).with_context(|| format!("parsing {}", bgw.display()))?;
    let h = SignMatrix::new(load_matrix(hadamard)?).with_context(|| format!("{}", hadamard.display()))?;
    let mut report = Report::new(format!("{name} --n {n}"));
    let p = 2 * n - 1;
    match bgw_violation(&w, p * p, p * p - 1) {
        None => report.pass_with(
            "W is a BGW",
            format!("({}, {}, {}) over C_{}", w.size(), p * p, p * p - 1, w.group_order()),
        ),
        Some(v) => report.fail("W is a BGW", v),
    }
    match class5_construction(n, &w, &h) {
        Ok(c) => class5_outputs(&mut report, &c, dir)?,
        Err(e) => report.fail("class-5 construction", e),
    }
    Ok(report)
}

pub fn construct_skew_bush(name: &str, dir: &Path) -> Result<Report> {
    let mut report = Report::new(name);
    let h = skew_bush_order4();
    match skew_bush_violation(&h) {
        None => report.pass_with("skew-Bush type", format!("order {}", h.matrix().rows())),
        Some(v) => report.fail("skew-Bush type", v),
    }
    let mut out = Output::new(dir)?;
    out.matrix("H.mat", h.matrix())?;
    out.finish(&mut report);
    Ok(report)
}

pub fn convert_h2d(name: &str, matrix: &Path, dir: &Path) -> Result<Report> {
    let m = load_matrix(matrix)?;
    let mut report = Report::new(name);
    let h = match BlockPartitionedHadamard::from_matrix(m) {
        Ok(h) => h,
        Err(e) => {
            report.fail("block Hadamard matrix", e);
            return Ok(report);
        }
    };
    match skew_bush_to_drad(&h) {
        Ok((g, parts)) => {
            report.pass("skew-Bush type");
            match is_drad(&g) {
                Some(p) => report.pass_with("A = (J - H)/2 is a DRAD", p),
                None => report.fail("A = (J - H)/2 is a DRAD", "parameters not constant"),
            }
            report.pass_with(
                "diagonal blocks are cocliques",
                format!("{} parts of size {}", parts.len(), h.block()),
            );
            let mut out = Output::new(dir)?;
            out.matrix("A.mat", g.adjacency())?;
            out.write("blocks.txt", &write_partition(&parts))?;
            out.finish(&mut report);
        }
        Err(e) => report.fail("skew-Bush type", e),
    }
    Ok(report)
}

pub fn convert_d2h(name: &str, matrix: &Path, partition: &Path, dir: &Path) -> Result<Report> {
    let m = load_matrix(matrix)?;
    let parts = load_partition(partition)?;
    let mut report = Report::new(name);
    let g = match Digraph::new(m) {
        Ok(g) => g,
        Err(e) => {
            report.fail("adjacency matrix", e);
            return Ok(report);
        }
    };
    match drad_to_skew_bush(&g, &parts) {
        Ok(h) => {
            report.pass_with(
                "H = A^T - A + I (x) J is skew-Bush type",
                format!("order {}", h.matrix().rows()),
            );
            let mut out = Output::new(dir)?;
            out.matrix("H.mat", h.matrix())?;
            out.finish(&mut report);
        }
        Err(e) => report.fail("H = A^T - A + I (x) J is skew-Bush type", e),
    }
    Ok(report)
}

pub fn verify_hadamard(name: &str, matrix: &Path) -> Result<Report> {
    let m = load_matrix(matrix)?;
    let mut report = Report::new(name);
    if let Some(h) = sign_matrix(&mut report, m) {
        if hadamard_checks(&mut report, &h) {
            report.pass_with("normalized", is_normalized(&h));
        }
    }
    Ok(report)
}

pub fn verify_bush(name: &str, matrix: &Path, skew: bool) -> Result<Report> {
    let m = load_matrix(matrix)?;
    let mut report = Report::new(name);
    let Some(h) = sign_matrix(&mut report, m) else {
        return Ok(report);
    };
    if !hadamard_checks(&mut report, &h) {
        return Ok(report);
    }
    let h = match BlockPartitionedHadamard::new(h) {
        Ok(h) => h,
        Err(e) => {
            report.fail("order 4n^2", e);
            return Ok(report);
        }
    };
    report.pass_with("order 4n^2", format!("n = {}", h.half()));
    let (label, violation) = if skew {
        ("skew-Bush type", skew_bush_violation(&h))
    } else {
        ("Bush type", bush_type_violation(&h))
    };
    match violation {
        None => report.pass_with(label, format!("{} blocks of order {}", h.block(), h.block())),
        Some(v) => report.fail(label, v),
    }
    Ok(report)
}

pub fn verify_nrd(name: &str, matrix: &Path, drad: bool) -> Result<Report> {
    let m = load_matrix(matrix)?;
    let mut report = Report::new(name);
    let g = match Digraph::new(m) {
        Ok(g) => g,
        Err(e) => {
            report.fail("adjacency matrix", e);
            return Ok(report);
        }
    };
    let nrd = check_nrd(&g);
    match &nrd {
        Ok(p) => report.pass_with("normally regular", p),
        Err(v) => report.fail("normally regular", v),
    }
    if drad {
        match (&nrd, is_drad(&g)) {
            (_, Some(p)) => report.pass_with("doubly regular", p),
            (Ok(p), None) => report.fail(
                "doubly regular",
                format!("lambda = {} differs from mu = {}", p.lambda, p.mu),
            ),
            (Err(v), None) => report.fail("doubly regular", v),
        }
    }
    Ok(report)
}

fn load_scheme_dir(dir: &Path) -> Result<Vec<IntMatrix>> {
    let mut mats = Vec::new();
    loop {
        let path = dir.join(format!("A{}.mat", mats.len()));
        if !path.exists() {
            break;
        }
        mats.push(load_matrix(&path)?);
    }
    if mats.is_empty() {
        bail!("{} holds no A0.mat", dir.display());
    }
    Ok(mats)
}

pub fn verify_scheme_dir(name: &str, dir: &Path) -> Result<Report> {
    let mats = load_scheme_dir(dir)?;
    let (p_path, q_path): (PathBuf, PathBuf) = (dir.join("P.mat"), dir.join("Q.mat"));
    let pq = match (p_path.exists(), q_path.exists()) {
        (true, true) => Some((load_gauss(&p_path)?, load_gauss(&q_path)?)),
        (false, false) => None,
        _ => bail!("P.mat and Q.mat must be given together"),
    };
    let mut report = Report::new(name);
    match verify_scheme(mats) {
        Ok(s) => {
            report.pass_with("association scheme axioms", scheme_summary(&s));
            if let Some((p, q)) = pq {
                check_eigensystem(&mut report, &s, &p, &q);
            }
        }
        Err(e) => report.fail("association scheme axioms", e),
    }
    Ok(report)
}

pub fn verify_bgw(name: &str, file: &Path, k: Option<usize>, lambda: Option<usize>) -> Result<Report> {
    let w = parse_group_ring(&read(file)?).with_context(|| format!("parsing {}", file.display()))?;
    let k = k.unwrap_or(w.size().saturating_sub(1));
    let lambda = lambda.unwrap_or(k.saturating_sub(1));
    let mut report = Report::new(name);
    let label = format!("BGW({}, {k}, {lambda}) over C_{}", w.size(), w.group_order());
    match bgw_violation(&w, k, lambda) {
        None => report.pass(&label),
        Some(v) => report.fail(&label, v),
    }
    Ok(report)
}

fn load_digraph(report: &mut Report, matrix: &Path) -> Result<Option<Digraph>> {
    match Digraph::new(load_matrix(matrix)?) {
        Ok(g) => Ok(Some(g)),
        Err(e) => {
            report.fail("adjacency matrix", e);
            Ok(None)
        }
    }
}

pub fn spectrum(name: &str, matrix: &Path) -> Result<Report> {
    let mut report = Report::new(name);
    let Some(g) = load_digraph(&mut report, matrix)? else {
        return Ok(report);
    };
    match re_spectrum(&g) {
        Ok(s) => {
            let values: Vec<String> = s.eigenvalues.iter().map(|&v| float(v)).collect();
            report.pass_with("eigenvalues of (A + A^T)/2", format!("[{}]", values.join(", ")));
        }
        Err(e) => report.fail("eigenvalues of (A + A^T)/2", e),
    }
    match min_real_part(&g) {
        Ok(m) => report.pass_with(
            "theta_min",
            format!(
                "{} (multiplicity {}, attained only by a real eigenvalue: {})",
                float(m.theta_min),
                m.multiplicity,
                m.purely_real
            ),
        ),
        Err(e) => report.fail("theta_min", e),
    }
    Ok(report)
}

fn conditions(r: &HoffmanReport) -> String {
    let value = |v: Option<i64>| v.map_or("not constant".to_string(), |v| v.to_string());
    let mut s = format!("size {}, condition (i) {}", r.coclique_size, value(r.condition_i_value));
    if r.condition_ii_applicable {
        s.push_str(&format!(", condition (ii) {}", value(r.condition_ii_value)));
    }
    s
}

fn holds(r: &HoffmanReport) -> bool {
    r.attains && r.condition_i && (!r.condition_ii_applicable || r.condition_ii)
}

pub fn hoffman(name: &str, matrix: &Path, coclique: Option<&Path>, partition: Option<&Path>) -> Result<Report> {
    let set = coclique
        .map(|p| parse_vertex_set(&read(p)?).with_context(|| format!("parsing {}", p.display())))
        .transpose()?;
    let parts = partition.map(load_partition).transpose()?;
    let mut report = Report::new(name);
    let Some(g) = load_digraph(&mut report, matrix)? else {
        return Ok(report);
    };
    let bound = match hoffman_bound(&g) {
        Ok(b) => b,
        Err(e) => {
            report.fail("Hoffman bound", e);
            return Ok(report);
        }
    };
    report.pass_with(
        "Hoffman bound",
        format!(
            "n = {}, k = {}, theta_min = {}, bound = {}",
            bound.n,
            bound.k,
            float(bound.theta_min),
            bound.bound
        ),
    );
    report.pass_with("condition (ii) applicable", bound.min_real_part.purely_real);
    if let Some(set) = set {
        match hoffman_report(&g, &set) {
            Ok(r) if !r.attains => report.pass_with("coclique", format!("size {}, below the bound", r.coclique_size)),
            Ok(r) if holds(&r) => report.pass_with("coclique attains the bound", conditions(&r)),
            Ok(r) => report.fail_with(
                "coclique attains the bound",
                format!("vertex {}", r.witness.map_or("?".into(), |w| w.to_string())),
                conditions(&r),
            ),
            Err(e) => report.fail("coclique", e),
        }
    }
    if let Some(parts) = parts {
        match verify_coclique_partition(&g, &parts) {
            Ok(pr) => {
                for (idx, part) in pr.parts.iter().enumerate() {
                    let label = format!("part {idx}");
                    match part {
                        Some(r) if holds(r) => report.pass_with(&label, conditions(r)),
                        Some(r) if !r.attains => report.fail_with(
                            &label,
                            format!("size {} below the bound", r.coclique_size),
                            conditions(r),
                        ),
                        Some(r) => report.fail_with(
                            &label,
                            format!("vertex {}", r.witness.map_or("?".into(), |w| w.to_string())),
                            conditions(r),
                        ),
                        None => {
                            let arc = g
                                .arc_within(&parts[idx])?
                                .map_or("?".into(), |(x, y)| format!("arc {x} -> {y}"));
                            report.fail(&label, arc)
                        }
                    }
                }
                if let Some((idx, _)) = pr.first_failure {
                    report.fail("partition", format!("first failing part {idx}"));
                } else {
                    report.pass_with("partition", format!("{} parts attain the bound", parts.len()));
                }
            }
            Err(e) => report.fail("partition", e),
        }
    }
    Ok(report)
}

pub fn scheme_eigen(name: &str, dir: &Path, seed: u64) -> Result<Report> {
    let mats = load_scheme_dir(dir)?;
    let mut report = Report::new(format!("{name} --seed {seed}"));
    let s = match verify_scheme(mats) {
        Ok(s) => s,
        Err(e) => {
            report.fail("association scheme axioms", e);
            return Ok(report);
        }
    };
    report.pass_with("association scheme axioms", scheme_summary(&s));
    match compute_eigenmatrices(&s, seed) {
        Ok(e) => {
            report.pass_with(
                "generic combination",
                format!("coefficients {}, attempts {}", list(&e.coefficients), e.attempts),
            );
            report.pass_with("P", complex_rows(&e.p));
            report.pass_with("Q", complex_rows(&e.q));
        }
        Err(e) => report.fail("eigenmatrices", e),
    }
    Ok(report)
}
