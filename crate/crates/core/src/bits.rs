//! Fixed-width bit rows used for adjacency matrices and candidate sets.

#[derive(Clone, PartialEq, Eq)]
pub(crate) struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn test(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// True iff the rows share a set bit.
    pub fn intersects(&self, other: &BitRow) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).any(|(w, o)| w & o != 0)
    }

    /// Number of shared bits capped at 2, plus the lowest shared bit.
    /// The cap keeps the scan cheap when only "none / one / more" matters.
    pub fn conflict_probe(&self, other: &BitRow) -> (usize, usize) {
        debug_assert_eq!(self.len, other.len);
        let mut count = 0usize;
        let mut first = 0usize;
        for (i, (w, o)) in self.words.iter().zip(&other.words).enumerate() {
            let common = w & o;
            if common != 0 {
                if count == 0 {
                    first = i * 64 + common.trailing_zeros() as usize;
                }
                count += common.count_ones() as usize;
                if count >= 2 {
                    return (2, first);
                }
            }
        }
        (count, first)
    }

    pub fn clear_all(&mut self) {
        self.words.fill(0);
    }

    pub fn copy_from(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        self.words.copy_from_slice(&other.words);
    }

    /// In-place intersection; the rows must have equal width.
    pub fn and_with(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    /// In-place difference `self &= !other`.
    pub fn and_not(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
    }

    pub fn first_set(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    /// Ones of `self & !other`, without materializing the difference.
    pub fn iter_ones_andnot<'a>(
        &'a self,
        other: &'a BitRow,
    ) -> impl Iterator<Item = usize> + 'a {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .flat_map(|(i, (&word, &mask))| {
                let mut w = word & !mask;
                std::iter::from_fn(move || {
                    if w == 0 {
                        return None;
                    }
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                })
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_and_iterate() {
        let mut row = BitRow::zeros(130);
        for i in [0, 63, 64, 127, 129] {
            row.set(i);
        }
        assert_eq!(row.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 127, 129]);
        assert_eq!(row.count_ones(), 5);
        assert_eq!(row.first_set(), Some(0));
        row.clear(0);
        assert_eq!(row.first_set(), Some(63));
        assert!(row.test(64));
        assert!(!row.test(65));
    }

    #[test]
    fn intersection_and_difference() {
        let mut a = BitRow::zeros(70);
        let mut b = BitRow::zeros(70);
        a.set(1);
        a.set(65);
        a.set(3);
        b.set(65);
        b.set(3);
        let mut and = a.clone();
        and.and_with(&b);
        assert_eq!(and.iter_ones().collect::<Vec<_>>(), vec![3, 65]);
        a.and_not(&b);
        assert_eq!(a.iter_ones().collect::<Vec<_>>(), vec![1]);
        assert!(!a.is_empty());
    }
}
