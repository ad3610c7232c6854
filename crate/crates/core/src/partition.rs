//! Integer partitions, stored as weakly decreasing `Vec<usize>` without zeros.

pub type Partition = Vec<usize>;

/// Partitions of `n` with all parts at most `max_part`, in decreasing lexicographic order.
pub fn partitions_bounded(n: usize, max_part: usize) -> Vec<Partition> {
    fn go(rem: usize, max: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_part, &mut Vec::new(), &mut out);
    out
}

pub fn partitions(n: usize) -> Vec<Partition> {
    partitions_bounded(n, n)
}

/// Strict partitions of `n`, decreasing lexicographic order.
pub fn strict_partitions(n: usize) -> Vec<Partition> {
    partitions(n).into_iter().filter(|p| is_strict(p)).collect()
}

/// Partitions of `n` into odd parts.
pub fn odd_partitions(n: usize) -> Vec<Partition> {
    partitions(n).into_iter().filter(|p| p.iter().all(|x| x % 2 == 1)).collect()
}

pub fn is_strict(p: &[usize]) -> bool {
    p.windows(2).all(|w| w[0] > w[1])
}

/// Sorts a composition into a partition, dropping zeros.
pub fn sort_parts(c: &[usize]) -> Partition {
    let mut p: Partition = c.iter().copied().filter(|&x| x > 0).collect();
    p.sort_unstable_by(|a, b| b.cmp(a));
    p
}

pub fn format_partition(p: &[usize]) -> String {
    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let c: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(c, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        // Euler: strict and odd partitions are equinumerous
        for n in 0..12 {
            assert_eq!(strict_partitions(n).len(), odd_partitions(n).len());
        }
        assert_eq!(partitions_bounded(5, 2), vec![vec![2, 2, 1], vec![2, 1, 1, 1], vec![1, 1, 1, 1, 1]]);
    }
}
