//! Symmetric-group combinatorics: inversion counts, reduced words in
//! adjacent transpositions, full enumeration, and the minimal-inversion
//! coset representatives (shuffles) that drive the symmetrizer
//! factorization.

use crate::{Error, Result};

/// Largest n for which full enumeration of S_n is permitted.
pub const MAX_ENUMERATION: usize = 8;

/// A permutation of {0, .., n-1}, stored as its image: position i maps to
/// `image[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(Error::InvalidParameter(format!(
                    "image {image:?} is not a bijection of 0..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    /// The adjacent transposition swapping positions k and k+1 (0-based).
    pub fn adjacent_transposition(n: usize, k: usize) -> Self {
        assert!(k + 1 < n, "transposition index {k} out of range for n={n}");
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(k, k + 1);
        Permutation { image }
    }

    /// Full reversal i -> n-1-i.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            image: (0..n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Composition of maps: (self o other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0usize; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }

    /// Number of pairs i < j with sigma(i) > sigma(j); equals the length
    /// of any reduced word.
    pub fn inversions(&self) -> usize {
        let n = self.len();
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.image[i] > self.image[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Reduced word produced by bubble sort, always clearing the leftmost
    /// descent: sigma = pi_{w[0]} o pi_{w[1]} o ... with length exactly
    /// `inversions()`.
    pub fn reduced_word(&self) -> Vec<usize> {
        self.reduced_word_by(DescentChoice::Leftmost)
    }

    /// Same factorization with a configurable descent strategy; used to
    /// cross-check well-definedness of quasi-multiplicative extensions.
    pub fn reduced_word_by(&self, choice: DescentChoice) -> Vec<usize> {
        let mut current = self.image.clone();
        let mut word_reversed = Vec::with_capacity(self.inversions());
        loop {
            let descent = match choice {
                DescentChoice::Leftmost => {
                    (0..current.len().saturating_sub(1)).find(|&k| current[k] > current[k + 1])
                }
                DescentChoice::Rightmost => (0..current.len().saturating_sub(1))
                    .rev()
                    .find(|&k| current[k] > current[k + 1]),
            };
            match descent {
                Some(k) => {
                    current.swap(k, k + 1);
                    word_reversed.push(k);
                }
                None => break,
            }
        }
        // Each swap multiplied on the right, so the word reads in reverse.
        word_reversed.reverse();
        word_reversed
    }
}

/// Which descent the bubble-sort factorization clears first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentChoice {
    Leftmost,
    Rightmost,
}

/// All of S_n in lexicographic order of images. Rejected above
/// `MAX_ENUMERATION` (40320 elements at n=8); larger symmetrizers must be
/// assembled through the recursive factorization instead.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>> {
    if n > MAX_ENUMERATION {
        return Err(Error::EnumerationTooLarge {
            n,
            max: MAX_ENUMERATION,
        });
    }
    let mut out = Vec::new();
    let mut image: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation {
            image: image.clone(),
        });
        if !next_lexicographic(&mut image) {
            break;
        }
    }
    Ok(out)
}

fn next_lexicographic(image: &mut [usize]) -> bool {
    let n = image.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && image[i - 1] >= image[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while image[j] <= image[i - 1] {
        j -= 1;
    }
    image.swap(i - 1, j);
    image[i..].reverse();
    true
}

/// Minimal-inversion representatives of the cosets of
/// S_{n-k} x S_k in S_n: the permutations increasing on the first n-k
/// positions and on the last k positions, in lexicographic order of
/// images. There are exactly binomial(n, k) of them.
pub fn shuffle_representatives(n: usize, k: usize) -> Result<Vec<Permutation>> {
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "shuffle degree k={k} exceeds n={n}"
        )));
    }
    let mut reps = Vec::with_capacity(binomial(n, k));
    let mut chosen: Vec<usize> = (0..k).collect(); // values routed to the tail block
    loop {
        let tail: Vec<usize> = chosen.clone();
        let mut in_tail = vec![false; n];
        for &v in &tail {
            in_tail[v] = true;
        }
        let head: Vec<usize> = (0..n).filter(|&v| !in_tail[v]).collect();
        let mut image = head;
        image.extend_from_slice(&tail);
        reps.push(Permutation { image });
        if !next_combination(&mut chosen, n) {
            break;
        }
    }
    reps.sort_by(|a, b| a.image.cmp(&b.image));
    Ok(reps)
}

fn next_combination(chosen: &mut [usize], n: usize) -> bool {
    let k = chosen.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if chosen[i] < n - k + i {
            chosen[i] += 1;
            for j in (i + 1)..k {
                chosen[j] = chosen[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn binomial(n: usize, k: usize) -> usize {
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
