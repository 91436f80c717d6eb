//! Dyck paths, the families avoiding `DUU` and `D^(p+1)`, and their
//! enumeration through the unique decomposition `P = U^(i-1) Q U D^i`.
//!
//! Paths are packed into a `u128` (`U` = 1, `D` = 0, first step in the low
//! bit), which caps the supported semilength at 64 and makes factor searches
//! plain shift-and-mask work.

use crate::{Error, Result};
use std::fmt;

/// Maximum semilength representable by the bit packing.
pub const MAX_SEMILENGTH: usize = 64;

/// Hard cap on materialized lattices: families larger than this are rejected.
pub const MAX_ELEMENTS: u128 = 1 << 23;

/// One step of a Dyck path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Up,
    Down,
}

/// The family parameter `p`: a finite integer `>= 2`, or infinity
/// (only `DUU` is forbidden).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyParam {
    Finite(u32),
    Infinity,
}

impl FamilyParam {
    pub fn finite(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::MalformedPath(format!("family parameter p={p} must be >= 2")));
        }
        Ok(FamilyParam::Finite(p))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, FamilyParam::Finite(_))
    }

    /// The effective bound on descent runs for paths of semilength `n`:
    /// `F_n^inf = F_n^n`, so infinity behaves like `p = max(n, 2)`.
    pub fn effective(self, n: usize) -> u32 {
        match self {
            FamilyParam::Finite(p) => p,
            FamilyParam::Infinity => (n as u32).max(2),
        }
    }
}

impl fmt::Display for FamilyParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyParam::Finite(p) => write!(f, "{p}"),
            FamilyParam::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for FamilyParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "oo" => Ok(FamilyParam::Infinity),
            _ => {
                let p: u32 = s
                    .parse()
                    .map_err(|_| Error::MalformedPath(format!("bad family parameter {s:?}")))?;
                FamilyParam::finite(p)
            }
        }
    }
}

/// The ordinates visited by a path: `2n + 1` values starting and ending at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightProfile(pub Vec<i32>);

impl HeightProfile {
    pub fn heights(&self) -> &[i32] {
        &self.0
    }
}

/// A Dyck path of semilength `n <= 64`, packed `U` = 1 / `D` = 0 with the
/// first step in the least significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyckPath {
    steps: u128,
    len: u8,
}

impl DyckPath {
    /// The empty path (semilength 0).
    pub const EMPTY: DyckPath = DyckPath { steps: 0, len: 0 };

    /// Builds a path from raw bits. The caller must supply a valid Dyck word.
    fn from_bits(steps: u128, len: usize) -> Self {
        debug_assert!(len % 2 == 0 && len <= 2 * MAX_SEMILENGTH);
        debug_assert!(len == 128 || steps >> len == 0);
        DyckPath { steps, len: len as u8 }
    }

    pub fn from_steps(steps: &[Step]) -> Result<Self> {
        if steps.len() > 2 * MAX_SEMILENGTH {
            return Err(Error::SizeGuard(format!(
                "path of {} steps exceeds the packing limit of {}",
                steps.len(),
                2 * MAX_SEMILENGTH
            )));
        }
        let mut bits = 0u128;
        let mut height = 0i32;
        for (i, s) in steps.iter().enumerate() {
            match s {
                Step::Up => {
                    bits |= 1 << i;
                    height += 1;
                }
                Step::Down => {
                    height -= 1;
                    if height < 0 {
                        return Err(Error::MalformedPath(
                            "prefix dips below the x-axis".into(),
                        ));
                    }
                }
            }
        }
        if height != 0 {
            return Err(Error::MalformedPath("unbalanced step counts".into()));
        }
        Ok(DyckPath::from_bits(bits, steps.len()))
    }

    /// Number of steps (`2n`).
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Semilength `n`.
    pub fn semilength(&self) -> usize {
        self.len() / 2
    }

    pub fn step(&self, i: usize) -> Step {
        debug_assert!(i < self.len());
        if self.steps >> i & 1 == 1 {
            Step::Up
        } else {
            Step::Down
        }
    }

    pub fn steps(&self) -> impl Iterator<Item = Step> + '_ {
        (0..self.len()).map(move |i| self.step(i))
    }

    /// Height after the first `k` steps.
    pub fn height_after(&self, k: usize) -> i32 {
        debug_assert!(k <= self.len());
        let mask = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
        let ups = (self.steps & mask).count_ones() as i32;
        2 * ups - k as i32
    }

    /// Length of the initial run of `U` steps.
    pub fn first_ascent(&self) -> usize {
        if self.len == 0 {
            return 0;
        }
        (!self.steps).trailing_zeros().min(self.len as u32) as usize
    }

    /// Length of the maximal run of `D` steps that starts at `pos`
    /// (0 if the step there is `U`).
    fn descent_run_at(&self, pos: usize) -> usize {
        let mut run = 0;
        while pos + run < self.len() && self.steps >> (pos + run) & 1 == 0 {
            run += 1;
        }
        run
    }

    /// Length of the first maximal run of `D` steps.
    pub fn first_descent(&self) -> usize {
        self.descent_run_at(self.first_ascent())
    }

    /// True iff the path contains the factor `DUU`.
    pub fn contains_duu(&self) -> bool {
        if self.len < 3 {
            return false;
        }
        let s = self.steps;
        let hits = !s & (s >> 1) & (s >> 2);
        let mask = (1u128 << (self.len - 2)) - 1;
        hits & mask != 0
    }

    /// True iff the path contains `k` consecutive `D` steps.
    pub fn contains_d_run(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        if self.len() < k {
            return false;
        }
        let mask = if self.len == 128 { u128::MAX } else { (1u128 << self.len) - 1 };
        let mut downs = !self.steps & mask;
        // After j AND-shifts, bit i survives iff steps i..=i+j are all D.
        for _ in 1..k {
            downs &= downs >> 1;
        }
        downs != 0
    }

    /// Concatenation `U^(a) ++ self ++ (suffix)`, used by the enumerators.
    fn assemble(prefix_ups: usize, q: &DyckPath, suffix: &[Step]) -> DyckPath {
        let mut bits = (1u128 << prefix_ups) - 1;
        bits |= q.steps << prefix_ups;
        let mut pos = prefix_ups + q.len();
        for s in suffix {
            if let Step::Up = s {
                bits |= 1 << pos;
            }
            pos += 1;
        }
        DyckPath::from_bits(bits, pos)
    }

    /// The subpath consisting of steps `lo..hi` (which must itself be Dyck).
    pub(crate) fn slice(&self, lo: usize, hi: usize) -> DyckPath {
        debug_assert!(lo <= hi && hi <= self.len());
        let width = hi - lo;
        let mask = if width == 128 { u128::MAX } else { (1u128 << width) - 1 };
        DyckPath::from_bits(self.steps >> lo & mask, width)
    }

    /// Replaces steps at `i, i+1` by `UD` (valley swap). Caller guarantees
    /// the factor there is `DU`.
    pub(crate) fn swap_valley_up(&self, i: usize) -> DyckPath {
        debug_assert!(matches!(self.step(i), Step::Down) && matches!(self.step(i + 1), Step::Up));
        let mut bits = self.steps;
        bits |= 1 << i;
        bits &= !(1 << (i + 1));
        DyckPath::from_bits(bits, self.len())
    }

    /// Replaces steps at `i, i+1` by `DU` (peak swap). Caller guarantees the
    /// factor there is `UD` and that the path stays non-negative.
    pub(crate) fn swap_peak_down(&self, i: usize) -> DyckPath {
        debug_assert!(matches!(self.step(i), Step::Up) && matches!(self.step(i + 1), Step::Down));
        let mut bits = self.steps;
        bits &= !(1 << i);
        bits |= 1 << (i + 1);
        DyckPath::from_bits(bits, self.len())
    }

    pub(crate) fn raw_bits(&self) -> u128 {
        self.steps
    }
}

/// Lexicographic order on step strings with `U < D`; shorter strings first.
impl Ord for DyckPath {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.len.cmp(&other.len) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.steps ^ other.steps;
        if diff == 0 {
            return Ordering::Equal;
        }
        // At the first differing step, the path holding U (bit 1) is smaller.
        let first = diff.trailing_zeros();
        if self.steps >> first & 1 == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for DyckPath {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.steps() {
            f.write_str(match s {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

/// Parses an ASCII step string (`U`/`D`, no separators) into a Dyck path.
pub fn parse_path(text: &str) -> Result<DyckPath> {
    let mut steps = Vec::with_capacity(text.len());
    for c in text.chars() {
        match c {
            'U' => steps.push(Step::Up),
            'D' => steps.push(Step::Down),
            other => return Err(Error::BadCharacter(other)),
        }
    }
    if steps.len() % 2 != 0 {
        return Err(Error::MalformedPath("odd number of steps".into()));
    }
    DyckPath::from_steps(&steps)
}

/// True iff `path` belongs to the family selected by `p`: no factor `DUU`,
/// and for finite `p` no factor `D^(p+1)`.
pub fn in_family(path: &DyckPath, p: FamilyParam) -> bool {
    if path.contains_duu() {
        return false;
    }
    match p {
        FamilyParam::Finite(p) => !path.contains_d_run(p as usize + 1),
        FamilyParam::Infinity => true,
    }
}

/// Number of elements of the family with semilength `n` (the generalized
/// Fibonacci number for finite `p`, `2^(n-1)` for infinity).
pub fn family_size(n: usize, p: FamilyParam) -> u128 {
    match p {
        FamilyParam::Infinity => {
            if n == 0 {
                1
            } else {
                1u128 << (n - 1)
            }
        }
        FamilyParam::Finite(p) => {
            let p = p as usize;
            let mut counts = vec![0u128; n + 1];
            counts[0] = 1;
            for m in 1..=n {
                for i in 1..=p.min(m) {
                    counts[m] += counts[m - i];
                }
            }
            counts[n]
        }
    }
}

/// Every element of the family with semilength `n`, in canonical order
/// (lexicographic on step strings, `U < D`), each path exactly once.
///
/// Finite `p` uses the decomposition `P = U^(i-1) Q U D^i`; infinity uses
/// `P = QUD` (last descent of length 1) or `P = UQD` (length >= 2).
pub fn enumerate_family(n: usize, p: FamilyParam) -> Result<Vec<DyckPath>> {
    if n > MAX_SEMILENGTH {
        return Err(Error::SizeGuard(format!("semilength {n} exceeds {MAX_SEMILENGTH}")));
    }
    if family_size(n, p) > MAX_ELEMENTS {
        return Err(Error::SizeGuard(format!(
            "F_{n}^{p} has {} elements, more than the {MAX_ELEMENTS} cap",
            family_size(n, p)
        )));
    }
    let mut levels: Vec<Vec<DyckPath>> = vec![vec![DyckPath::EMPTY]];
    for m in 1..=n {
        let mut level = Vec::with_capacity(family_size(m, p) as usize);
        match p {
            FamilyParam::Finite(p) => {
                let mut suffix = vec![Step::Up];
                for i in 1..=(p as usize).min(m) {
                    suffix.push(Step::Down);
                    for q in &levels[m - i] {
                        level.push(DyckPath::assemble(i - 1, q, &suffix));
                    }
                }
            }
            FamilyParam::Infinity => {
                for q in &levels[m - 1] {
                    level.push(DyckPath::assemble(0, q, &[Step::Up, Step::Down]));
                    if m >= 2 {
                        level.push(DyckPath::assemble(1, q, &[Step::Down]));
                    }
                }
            }
        }
        levels.push(level);
    }
    let mut out = levels.pop().expect("level n exists");
    out.sort_unstable();
    Ok(out)
}

/// Length of the last descent run. Errors on the empty path: the paper-side
/// convention `type` of the empty path exists only inside one proof and is
/// not part of the interface.
pub fn path_type(path: &DyckPath) -> Result<usize> {
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    // Trailing D steps sit in the high end of the packing: count the zero
    // bits between the topmost U and position len-1.
    let bit_length = 128 - path.raw_bits().leading_zeros() as usize;
    Ok(path.len() - bit_length)
}

/// Unique decomposition `P = U^(i-1) Q U D^i` with `i = type(P)` and
/// `Q` in the same family of semilength `n - i`.
pub fn decompose(path: &DyckPath, p: FamilyParam) -> Result<(usize, DyckPath)> {
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    if !in_family(path, p) {
        return Err(Error::NotInFamily(p));
    }
    let i = path_type(path)?;
    // steps: [0 .. i-1) = U^(i-1), [i-1 .. len-i-1) = Q, then U D^i.
    let q = path.slice(i - 1, path.len() - i - 1);
    Ok((i, q))
}

/// The height profile: ordinate after each step, including the start.
pub fn height_profile(path: &DyckPath) -> HeightProfile {
    let mut heights = Vec::with_capacity(path.len() + 1);
    let mut h = 0i32;
    heights.push(h);
    for s in path.steps() {
        h += match s {
            Step::Up => 1,
            Step::Down => -1,
        };
        heights.push(h);
    }
    HeightProfile(heights)
}

/// Rank statistic: 0 on `(UD)^n`, and exactly +1 per Stanley cover
/// (`DU -> UD` swap). Equals half the signed area between the path and the
/// sawtooth `(UD)^n`, and matches the subset rank of `bijections::to_subset`.
pub fn area(path: &DyckPath) -> usize {
    let mut sum = 0i64;
    let mut h = 0i64;
    for s in path.steps() {
        h += match s {
            Step::Up => 1,
            Step::Down => -1,
        };
        sum += h;
    }
    ((sum - path.semilength() as i64) / 2) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Independent oracle: all Dyck paths of semilength n by direct search.
    fn all_dyck(n: usize) -> Vec<DyckPath> {
        fn rec(steps: &mut Vec<Step>, ups: usize, downs: usize, n: usize, out: &mut Vec<DyckPath>) {
            if ups + downs == 2 * n {
                out.push(DyckPath::from_steps(steps).unwrap());
                return;
            }
            if ups < n {
                steps.push(Step::Up);
                rec(steps, ups + 1, downs, n, out);
                steps.pop();
            }
            if downs < ups {
                steps.push(Step::Down);
                rec(steps, ups, downs + 1, n, out);
                steps.pop();
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), 0, 0, n, &mut out);
        out
    }

    #[test]
    fn parse_accepts_and_rejects() {
        assert_eq!(parse_path("UUDD").unwrap().semilength(), 2);
        assert_eq!(parse_path("").unwrap(), DyckPath::EMPTY);
        assert!(matches!(parse_path("UDDU"), Err(Error::MalformedPath(_))));
        assert!(matches!(parse_path("UDXD"), Err(Error::BadCharacter('X'))));
        assert!(matches!(parse_path("UUD"), Err(Error::MalformedPath(_))));
        assert!(matches!(parse_path("UDDD"), Err(Error::MalformedPath(_))));
    }

    #[test]
    fn display_round_trips() {
        for text in ["", "UD", "UUDD", "UDUDUD", "UUDUDD"] {
            assert_eq!(parse_path(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn membership_examples() {
        let p2 = FamilyParam::finite(2).unwrap();
        assert!(in_family(&parse_path("UUDUDD").unwrap(), p2));
        assert!(!in_family(&parse_path("UDUUDD").unwrap(), FamilyParam::Infinity));
        assert!(!in_family(&parse_path("UUUDDD").unwrap(), p2));
    }

    #[test]
    fn membership_against_scan_oracle() {
        // Factor scan over the explicit character string.
        for n in 0..=7 {
            for path in all_dyck(n) {
                let text = path.to_string();
                let has_duu = text.contains("DUU");
                assert_eq!(path.contains_duu(), has_duu, "{text}");
                for p in 2..=4u32 {
                    let run = "D".repeat(p as usize + 1);
                    let expect = !has_duu && !text.contains(&run);
                    assert_eq!(in_family(&path, FamilyParam::Finite(p)), expect, "{text} p={p}");
                }
                assert_eq!(in_family(&path, FamilyParam::Infinity), !has_duu, "{text}");
            }
        }
    }

    #[test]
    fn enumerate_matches_filter_oracle() {
        for n in 0..=8 {
            let universe = all_dyck(n);
            for p in [
                FamilyParam::Finite(2),
                FamilyParam::Finite(3),
                FamilyParam::Finite(4),
                FamilyParam::Infinity,
            ] {
                let expect: BTreeSet<DyckPath> =
                    universe.iter().copied().filter(|q| in_family(q, p)).collect();
                let got = enumerate_family(n, p).unwrap();
                assert_eq!(got.len(), expect.len(), "n={n} p={p}: duplicate or missing");
                assert_eq!(got.iter().copied().collect::<BTreeSet<_>>(), expect, "n={n} p={p}");
                let mut sorted = got.clone();
                sorted.sort();
                assert_eq!(got, sorted, "canonical order n={n} p={p}");
            }
        }
    }

    #[test]
    fn enumerate_small_examples() {
        let p2 = FamilyParam::finite(2).unwrap();
        let f32 = enumerate_family(3, p2).unwrap();
        let expect: BTreeSet<String> =
            ["UDUDUD", "UUDDUD", "UUDUDD"].iter().map(|s| s.to_string()).collect();
        assert_eq!(f32.iter().map(|p| p.to_string()).collect::<BTreeSet<_>>(), expect);
        assert_eq!(enumerate_family(5, p2).unwrap().len(), 8);
        assert_eq!(enumerate_family(4, FamilyParam::Infinity).unwrap().len(), 8);
        assert_eq!(enumerate_family(0, p2).unwrap(), vec![DyckPath::EMPTY]);
    }

    #[test]
    fn family_sizes_follow_recurrences() {
        for p in 2..=6u32 {
            let fam = FamilyParam::Finite(p);
            let mut f = vec![0i128; 21];
            for (n, slot) in f.iter_mut().enumerate() {
                *slot = if n == 0 {
                    1
                } else {
                    (1..=(p as usize).min(n)).map(|i| family_size(n - i, fam) as i128).sum()
                };
                assert_eq!(family_size(n, fam) as i128, *slot, "n={n} p={p}");
            }
        }
        assert_eq!(family_size(0, FamilyParam::Infinity), 1);
        for n in 1..=20 {
            assert_eq!(family_size(n, FamilyParam::Infinity), 1 << (n - 1));
        }
    }

    #[test]
    fn inclusion_chain() {
        for n in 0..=8 {
            let by_p: Vec<BTreeSet<DyckPath>> = (2..=5)
                .map(|p| {
                    enumerate_family(n, FamilyParam::Finite(p)).unwrap().into_iter().collect()
                })
                .collect();
            let inf: BTreeSet<DyckPath> =
                enumerate_family(n, FamilyParam::Infinity).unwrap().into_iter().collect();
            for w in by_p.windows(2) {
                assert!(w[0].is_subset(&w[1]));
            }
            assert!(by_p.last().unwrap().is_subset(&inf));
        }
    }

    #[test]
    fn type_and_decompose() {
        let p2 = FamilyParam::finite(2).unwrap();
        assert_eq!(path_type(&parse_path("UDUUDD").unwrap()).unwrap(), 2);
        assert_eq!(path_type(&parse_path("UDUDUD").unwrap()).unwrap(), 1);
        assert_eq!(path_type(&parse_path("UUUDDD").unwrap()).unwrap(), 3);
        assert!(matches!(path_type(&DyckPath::EMPTY), Err(Error::EmptyPath)));

        let (i, q) = decompose(&parse_path("UUDUDD").unwrap(), p2).unwrap();
        assert_eq!((i, q.to_string().as_str()), (2, "UD"));
        let (i, q) = decompose(&parse_path("UD").unwrap(), p2).unwrap();
        assert_eq!((i, q), (1, DyckPath::EMPTY));
        let (i, q) = decompose(&parse_path("UDUDUD").unwrap(), p2).unwrap();
        assert_eq!((i, q.to_string().as_str()), (1, "UDUD"));

        assert!(matches!(
            decompose(&parse_path("UUUDDD").unwrap(), p2),
            Err(Error::NotInFamily(_))
        ));
    }

    #[test]
    fn decompose_reassemble_identity() {
        for p in [FamilyParam::Finite(2), FamilyParam::Finite(3), FamilyParam::Infinity] {
            for n in 1..=8 {
                for path in enumerate_family(n, p).unwrap() {
                    let (i, q) = decompose(&path, p).unwrap();
                    assert!(in_family(&q, p));
                    let mut suffix = vec![Step::Up];
                    suffix.extend(std::iter::repeat(Step::Down).take(i));
                    let back = DyckPath::assemble(i - 1, &q, &suffix);
                    assert_eq!(back, path);
                }
            }
        }
    }

    #[test]
    fn profiles() {
        assert_eq!(height_profile(&parse_path("UUDD").unwrap()).0, vec![0, 1, 2, 1, 0]);
        assert_eq!(height_profile(&DyckPath::EMPTY).0, vec![0]);
        assert_eq!(height_profile(&parse_path("UDUD").unwrap()).0, vec![0, 1, 0, 1, 0]);
    }

    #[test]
    fn area_examples() {
        assert_eq!(area(&parse_path("UDUDUDUDUD").unwrap()), 0);
        for n in 1..=8 {
            let max = parse_path(&format!("{}{}", "U".repeat(n), "D".repeat(n))).unwrap();
            assert_eq!(area(&max), n * (n - 1) / 2);
        }
        // The 7-semilength example path: area = subset rank of {2,3,5,6}.
        assert_eq!(area(&parse_path("UUUUUDUDDDUDDD").unwrap()), 16);
    }

    #[test]
    fn area_counts_valley_swaps() {
        for path in all_dyck(6) {
            let text = path.to_string();
            for i in 0..text.len() - 1 {
                if &text[i..i + 2] == "DU" {
                    let swapped = path.swap_valley_up(i);
                    assert_eq!(area(&swapped), area(&path) + 1, "{text} @ {i}");
                }
            }
        }
    }
}
