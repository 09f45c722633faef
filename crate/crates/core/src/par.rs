//! Root-level fan-out that runs on rayon when the `parallel` feature is on.
//! Results are concatenated in input order either way.

#[cfg(feature = "parallel")]
pub(crate) fn flat_map<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> Vec<T> + Sync + Send,
{
    use rayon::prelude::*;
    items
        .into_par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn flat_map<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    F: Fn(I) -> Vec<T>,
{
    items.into_iter().flat_map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn map<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    F: Fn(I) -> T,
{
    items.into_iter().map(f).collect()
}
