//! Constructors for the classical variety families, cone and generic
//! projection modifiers, and the textual mini-language naming them.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::chart::ParamMap;
use crate::error::{Error, ParseError};
use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::scalar::{Ring, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Family {
    /// Image of P^n under the degree-d Veronese embedding.
    Veronese { n: usize, d: usize },
    /// Image of a product of projective spaces under the Segre embedding.
    Segre { factors: Vec<usize> },
    /// m-planes in P^n under the Pluecker embedding.
    Grassmann { m: usize, n: usize },
    /// Rational normal scroll S(a_1, ..., a_n).
    Scroll { degrees: Vec<usize> },
    /// Spinor variety of isotropic (k-1)-planes in a (2k-1)-dimensional
    /// quadric, via even principal sub-pfaffians.
    Spinor { k: usize },
    /// Rank-one hermitian matrices over a split composition algebra.
    Hermitian { algebra: Algebra, size: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Modifier {
    /// Cone with a fresh (c-1)-dimensional vertex disjoint from the base span.
    Cone(usize),
    /// Generic linear projection dropping c ambient dimensions.
    Project(usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarietySpec {
    pub family: Family,
    pub modifiers: Vec<Modifier>,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl Family {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: &str| Err(Error::InvalidSpec(m.to_string()));
        match self {
            Family::Veronese { n, d } => {
                if *n < 1 || *d < 1 {
                    return bad("veronese requires n >= 1 and d >= 1");
                }
            }
            Family::Segre { factors } => {
                if factors.len() < 2 {
                    return bad("segre requires at least two factors");
                }
                if factors.iter().any(|&m| m == 0) {
                    return bad("segre factors must be positive");
                }
                if factors.windows(2).any(|w| w[0] > w[1]) {
                    return bad("segre factors must be nondecreasing");
                }
            }
            Family::Grassmann { m, n } => {
                if m >= n {
                    return bad("grassmann requires 0 <= m < n");
                }
            }
            Family::Scroll { degrees } => {
                if degrees.is_empty() {
                    return bad("scroll requires at least one degree");
                }
                if degrees.windows(2).any(|w| w[0] > w[1]) {
                    return bad("scroll degrees must be nondecreasing");
                }
                if *degrees.last().unwrap() == 0 {
                    return bad("scroll requires a_n > 0");
                }
            }
            Family::Spinor { k } => {
                if *k < 1 {
                    return bad("spinor requires k >= 1");
                }
            }
            Family::Hermitian { algebra, size } => {
                if *size < 3 {
                    return bad("hermitian requires size >= 3");
                }
                if *algebra == Algebra::SplitO && *size != 3 {
                    return bad("hermitian over splitO requires size 3");
                }
            }
        }
        Ok(())
    }

    /// Dimension of the parametrized variety.
    pub fn dim(&self) -> usize {
        match self {
            Family::Veronese { n, .. } => *n,
            Family::Segre { factors } => factors.iter().sum(),
            Family::Grassmann { m, n } => (m + 1) * (n - m),
            Family::Scroll { degrees } => degrees.len(),
            Family::Spinor { k } => binomial(k + 1, 2),
            Family::Hermitian { algebra, size } => (size - 1) * algebra.dim(),
        }
    }

    /// Ambient projective dimension of the embedding.
    pub fn ambient(&self) -> usize {
        match self {
            Family::Veronese { n, d } => binomial(n + d, *d) - 1,
            Family::Segre { factors } => factors.iter().map(|m| m + 1).product::<usize>() - 1,
            Family::Grassmann { m, n } => binomial(n + 1, m + 1) - 1,
            Family::Scroll { degrees } => degrees.iter().sum::<usize>() + degrees.len() - 1,
            Family::Spinor { k } => (1usize << k) - 1,
            Family::Hermitian { algebra, size } => {
                size + binomial(*size, 2) * algebra.dim() - 1
            }
        }
    }

    /// Whether the constructed model is smooth (entered on bound verdicts
    /// whose theorems assume smoothness).
    pub fn is_smooth(&self) -> bool {
        match self {
            Family::Scroll { degrees } => degrees[0] > 0,
            _ => true,
        }
    }
}

impl VarietySpec {
    pub fn new(family: Family) -> Self {
        VarietySpec {
            family,
            modifiers: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        self.family.validate()?;
        let mut ambient = self.family.ambient();
        for m in &self.modifiers {
            match *m {
                Modifier::Cone(c) => {
                    if c == 0 {
                        return Err(Error::InvalidSpec("cone requires c >= 1".into()));
                    }
                    ambient += c;
                }
                Modifier::Project(c) => {
                    if c == 0 {
                        return Err(Error::InvalidSpec("project requires c >= 1".into()));
                    }
                    if c >= ambient {
                        return Err(Error::InvalidSpec(
                            "project would collapse the ambient space".into(),
                        ));
                    }
                    ambient -= c;
                }
            }
        }
        Ok(())
    }

    /// Dimension after modifiers.
    pub fn dim(&self) -> usize {
        let mut n = self.family.dim();
        for m in &self.modifiers {
            if let Modifier::Cone(c) = m {
                n += c;
            }
        }
        n
    }

    /// Ambient dimension after modifiers.
    pub fn ambient(&self) -> usize {
        let mut r = self.family.ambient();
        for m in &self.modifiers {
            match *m {
                Modifier::Cone(c) => r += c,
                Modifier::Project(c) => r -= c,
            }
        }
        r
    }

    /// Smoothness hypothesis for bound checks: any modifier disqualifies.
    pub fn is_smooth_model(&self) -> bool {
        self.family.is_smooth() && self.modifiers.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Chart construction
// ---------------------------------------------------------------------------

/// Build the affine chart of the specified variety. `seed` feeds the random
/// matrices of `project` modifiers; everything else is deterministic.
pub fn build<F: Scalar>(spec: &VarietySpec, seed: u64) -> Result<ParamMap<F>, Error> {
    spec.validate()?;
    let mut chart = build_family::<F>(&spec.family);
    for (idx, m) in spec.modifiers.iter().enumerate() {
        chart = match *m {
            Modifier::Cone(c) => apply_cone(chart, c),
            Modifier::Project(c) => apply_project(chart, c, seed, idx as u64)?,
        };
    }
    Ok(chart.with_label(spec.to_string()))
}

fn build_family<F: Scalar>(family: &Family) -> ParamMap<F> {
    let label = VarietySpec::new(family.clone()).to_string();
    match family {
        Family::Veronese { n, d } => {
            // all monomials of degree <= d in the n chart parameters,
            // ordered by total degree then lexicographically
            let mut coords = Vec::new();
            for total in 0..=(*d as u32) {
                let mut exps: Vec<Vec<u32>> = Vec::new();
                gen_exponents(*n, &mut vec![0; *n], 0, total, &mut exps);
                exps.sort();
                for e in exps {
                    let pairs: Vec<(usize, u32)> = e
                        .iter()
                        .enumerate()
                        .filter(|&(_, &p)| p > 0)
                        .map(|(v, &p)| (v, p))
                        .collect();
                    coords.push(MultiPoly::monomial(&pairs, F::one()));
                }
            }
            ParamMap::new(*n, coords, label)
        }
        Family::Segre { factors } => {
            // one affine chart coordinate tuple per factor; coordinates are
            // all products, last factor fastest
            let n: usize = factors.iter().sum();
            let mut offsets = Vec::with_capacity(factors.len());
            let mut off = 0;
            for &m in factors {
                offsets.push(off);
                off += m;
            }
            let mut coords: Vec<MultiPoly<F>> = vec![MultiPoly::one()];
            for (fi, &m) in factors.iter().enumerate() {
                let mut next = Vec::new();
                for c in &coords {
                    // index 0 of each factor is the chart constant 1
                    next.push(c.clone());
                    for v in 0..m {
                        next.push(c.mul(&MultiPoly::var(offsets[fi] + v)));
                    }
                }
                coords = next;
            }
            ParamMap::new(n, coords, label)
        }
        Family::Grassmann { m, n } => {
            // maximal minors of [I | B] for a free (m+1) x (n-m) block
            let rows = m + 1;
            let free = n - m;
            let mut mat = Matrix::<MultiPoly<F>>::zeros(rows, n + 1);
            for i in 0..rows {
                *mat.at_mut(i, i) = MultiPoly::one();
                for j in 0..free {
                    *mat.at_mut(i, rows + j) = MultiPoly::var(i * free + j);
                }
            }
            ParamMap::new(rows * free, mat.maximal_minors(), label)
        }
        Family::Scroll { degrees } => {
            // parameters (t, x_1, ..., x_{n-1}) with x_n = 1;
            // coordinates x_i t^j for 0 <= j <= a_i
            let n = degrees.len();
            let mut coords = Vec::new();
            for (i, &a) in degrees.iter().enumerate() {
                for j in 0..=a as u32 {
                    let mut pairs: Vec<(usize, u32)> = Vec::new();
                    if j > 0 {
                        pairs.push((0, j));
                    }
                    if i < n - 1 {
                        pairs.push((1 + i, 1));
                    }
                    coords.push(MultiPoly::monomial(&pairs, F::one()));
                }
            }
            ParamMap::new(n, coords, label)
        }
        Family::Spinor { k } => {
            // pfaffians of the even principal submatrices of a skew
            // (k+1) x (k+1) parameter matrix, by subset size then lex
            let sz = k + 1;
            let mut var_of = vec![vec![0usize; sz]; sz];
            let mut c = 0;
            for i in 0..sz {
                for j in i + 1..sz {
                    var_of[i][j] = c;
                    c += 1;
                }
            }
            let mut skew = Matrix::<MultiPoly<F>>::zeros(sz, sz);
            for i in 0..sz {
                for j in i + 1..sz {
                    *skew.at_mut(i, j) = MultiPoly::var(var_of[i][j]);
                    *skew.at_mut(j, i) = MultiPoly::var(var_of[i][j]).neg();
                }
            }
            let mut coords = Vec::new();
            let mut size = 0;
            while size <= sz {
                for subset in subsets_of_size(sz, size) {
                    let sub = Matrix::from_rows(
                        subset
                            .iter()
                            .map(|&a| subset.iter().map(|&b| skew.at(a, b).clone()).collect())
                            .collect(),
                    );
                    coords.push(sub.pfaffian().expect("principal submatrix is skew"));
                }
                size += 2;
            }
            ParamMap::new(c, coords, label)
        }
        Family::Hermitian { algebra, size } => {
            // entries of v v* for v = (1, u_1, ..., u_{s-1}); diagonals are
            // norms, off-diagonals the components of v_i conj(v_j)
            let table = algebra.table();
            let dim = table.dim;
            let s = *size;
            let unit: Vec<MultiPoly<F>> = table.unit();
            let mut vs: Vec<Vec<MultiPoly<F>>> = vec![unit];
            for i in 0..s - 1 {
                vs.push((0..dim).map(|c| MultiPoly::var(i * dim + c)).collect());
            }
            let mut coords = Vec::new();
            for v in &vs {
                coords.push(table.norm(v));
            }
            for i in 0..s {
                for j in i + 1..s {
                    coords.extend(table.mul(&vs[i], &table.conj(&vs[j])));
                }
            }
            ParamMap::new((s - 1) * dim, coords, label)
        }
    }
}

fn gen_exponents(
    n: usize,
    cur: &mut Vec<u32>,
    pos: usize,
    left: u32,
    out: &mut Vec<Vec<u32>>,
) {
    if pos == n {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for p in 0..=left {
        cur[pos] = p;
        gen_exponents(n, cur, pos + 1, left - p, out);
    }
    cur[pos] = 0;
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Cone over the chart with a fresh (c-1)-dimensional vertex: c new
/// parameters become c new coordinates, so the vertex span is disjoint from
/// the base coordinates and vertex containment checks are exact.
fn apply_cone<F: Scalar>(chart: ParamMap<F>, c: usize) -> ParamMap<F> {
    let n = chart.n();
    let mut coords = chart.coords().to_vec();
    for i in 0..c {
        coords.push(MultiPoly::var(n + i));
    }
    ParamMap::new(n + c, coords, chart.label().to_string())
}

/// Compose with a seeded random full-rank (r+1-c) x (r+1) matrix.
fn apply_project<F: Scalar>(
    chart: ParamMap<F>,
    c: usize,
    seed: u64,
    modifier_index: u64,
) -> Result<ParamMap<F>, Error> {
    let cols = chart.ambient() + 1;
    let rows = cols - c;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0x70726f6a ^ modifier_index); // distinct stream per modifier
    for _ in 0..10 {
        let data: Vec<F> = (0..rows * cols)
            .map(|_| F::from_i64(rng.gen_range(-99..=99i64)))
            .collect();
        let l = Matrix::new(rows, cols, data);
        if l.rank() == rows {
            return Ok(chart.compose_linear(&l));
        }
    }
    Err(Error::Analysis("could not draw a full-rank projection".into()))
}

// ---------------------------------------------------------------------------
// Mini-language
// ---------------------------------------------------------------------------

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Veronese { n, d } => write!(f, "veronese:{},{}", n, d),
            Family::Segre { factors } => write!(f, "segre:{}", join_nums(factors)),
            Family::Grassmann { m, n } => write!(f, "grassmann:{},{}", m, n),
            Family::Scroll { degrees } => write!(f, "scroll:{}", join_nums(degrees)),
            Family::Spinor { k } => write!(f, "spinor:{}", k),
            Family::Hermitian { algebra, size } => {
                write!(f, "hermitian:{},{}", algebra.name(), size)
            }
        }
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for m in &self.modifiers {
            match m {
                Modifier::Cone(c) => write!(f, "|cone:{}", c)?,
                Modifier::Project(c) => write!(f, "|project:{}", c)?,
            }
        }
        Ok(())
    }
}

fn join_nums(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, expected: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            expected: expected.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, ch: char) -> Result<(), ParseError> {
        if self.rest().starts_with(ch) {
            self.pos += ch.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", ch)))
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self
            .rest()
            .chars()
            .next()
            .map_or(false, |c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        self.text[start..self.pos].to_ascii_lowercase()
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while self
            .rest()
            .chars()
            .next()
            .map_or(false, |c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn number_list(&mut self) -> Result<Vec<usize>, ParseError> {
        let mut out = vec![self.number()?];
        while self.rest().starts_with(',') {
            self.pos += 1;
            out.push(self.number()?);
        }
        Ok(out)
    }
}

/// Parse the variety mini-language:
/// `family ("|" modifier)*` where `family` is one of
/// `veronese:n,d  segre:m1,...,mh  grassmann:m,n  scroll:a1,...,an
///  spinor:k  hermitian:{R|splitC|splitH|splitO},size`
/// and `modifier` is `cone:c` or `project:c`. Family and algebra names are
/// case-insensitive.
pub fn parse_spec(text: &str) -> Result<VarietySpec, ParseError> {
    let mut p = Parser { text, pos: 0 };
    let name = p.ident();
    if name.is_empty() {
        return Err(p.err("expected family name"));
    }
    p.eat(':')?;
    let family = match name.as_str() {
        "veronese" => {
            let nums = p.number_list()?;
            if nums.len() != 2 {
                return Err(p.err("veronese takes exactly two integers n,d"));
            }
            Family::Veronese {
                n: nums[0],
                d: nums[1],
            }
        }
        "segre" => Family::Segre {
            factors: p.number_list()?,
        },
        "grassmann" => {
            let nums = p.number_list()?;
            if nums.len() != 2 {
                return Err(p.err("grassmann takes exactly two integers m,n"));
            }
            Family::Grassmann {
                m: nums[0],
                n: nums[1],
            }
        }
        "scroll" => Family::Scroll {
            degrees: p.number_list()?,
        },
        "spinor" => {
            let nums = p.number_list()?;
            if nums.len() != 1 {
                return Err(p.err("spinor takes exactly one integer k"));
            }
            Family::Spinor { k: nums[0] }
        }
        "hermitian" => {
            let alg_name = p.ident();
            let algebra = match alg_name.as_str() {
                "r" => Algebra::R,
                "splitc" => Algebra::SplitC,
                "splith" => Algebra::SplitH,
                "splito" => Algebra::SplitO,
                _ => return Err(p.err("expected algebra: R, splitC, splitH or splitO")),
            };
            p.eat(',')?;
            let size = p.number()?;
            Family::Hermitian { algebra, size }
        }
        other => {
            return Err(ParseError {
                pos: 0,
                expected: format!(
                    "unknown family '{}': expected veronese, segre, grassmann, scroll, spinor or hermitian",
                    other
                ),
            })
        }
    };

    let mut spec = VarietySpec::new(family);
    while p.rest().starts_with('|') {
        p.pos += 1;
        let name = p.ident();
        p.eat(':')?;
        let c = p.number()?;
        match name.as_str() {
            "cone" => spec.modifiers.push(Modifier::Cone(c)),
            "project" => spec.modifiers.push(Modifier::Project(c)),
            _ => return Err(p.err("expected modifier: cone or project")),
        }
    }
    if !p.rest().is_empty() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(spec)
}

impl FromStr for VarietySpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spec(s)
    }
}
