/// All monotone maps `{0..len-1} -> {0..=max}`, in lexicographic order.
pub(crate) fn monotone_maps(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(len: usize, max: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            go(len, max, v, cur, out);
            cur.pop();
        }
    }
    go(len, max, 0, &mut cur, &mut out);
    out
}

pub(crate) fn is_monotone(xs: &[usize]) -> bool {
    xs.windows(2).all(|w| w[0] <= w[1])
}
