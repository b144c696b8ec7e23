use std::ops::RangeInclusive;
use std::str::FromStr;

use ttk::knot::KnotSpec;

/// `p=2..5,k=1..3,m=1..3[,l=a..b]`; a single number is a one-point range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRange {
    pub p: RangeInclusive<i64>,
    pub k: RangeInclusive<i64>,
    pub m: RangeInclusive<i64>,
    pub l: Option<RangeInclusive<i64>>,
}

impl Default for GridRange {
    fn default() -> Self {
        GridRange { p: 2..=5, k: 1..=3, m: 1..=3, l: None }
    }
}

impl GridRange {
    /// Valid specs in `p, k, m, l, sign` order.
    pub fn specs(&self) -> Vec<KnotSpec> {
        KnotSpec::grid(*self.p.end(), *self.k.end(), *self.m.end())
            .into_iter()
            .filter(|s| self.p.contains(&s.p) && self.k.contains(&s.k) && self.m.contains(&s.m))
            .filter(|s| self.l.as_ref().is_none_or(|l| l.contains(&s.l)))
            .filter(|s| s.validate().is_ok())
            .collect()
    }
}

fn range(text: &str) -> Result<RangeInclusive<i64>, String> {
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad number `{t}`"));
    let r = match text.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let n = num(text)?;
            n..=n
        }
    };
    if r.is_empty() {
        return Err(format!("empty range `{text}`"));
    }
    Ok(r)
}

impl FromStr for GridRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut g = GridRange::default();
        for part in s.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=range, got `{part}`"))?;
            let r = range(value)?;
            match key.trim() {
                "p" => g.p = r,
                "k" => g.k = r,
                "m" => g.m = r,
                "l" => g.l = Some(r),
                other => return Err(format!("unknown grid key `{other}`")),
            }
        }
        if *g.p.start() < 2 || *g.k.start() < 1 || *g.m.start() < 1 {
            return Err("need p >= 2, k >= 1, m >= 1".into());
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges() {
        let g: GridRange = "p=2..3,k=1,m=1..2".parse().unwrap();
        assert_eq!(g.p, 2..=3);
        assert_eq!(g.k, 1..=1);
        // p=2: l=1, m in 1..2, both signs; p=3: l in 1..2
        assert_eq!(g.specs().len(), 2 * 2 + 2 * 2 * 2);
        assert!("p=1..3".parse::<GridRange>().is_err());
        assert!("q=2".parse::<GridRange>().is_err());
        assert!("p=4..2".parse::<GridRange>().is_err());
    }
}
