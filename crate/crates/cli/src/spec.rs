//! Text form of a spider: `star:3,3,3`, `morrison:2,5`, or
//! `graph:4;edges=0-1,1-2,2-3;at=0,3;legs=2,5`.

use abelian_spiders::spider::{Graph, SpiderSpec};
use anyhow::{anyhow, bail, Context, Result};

fn numbers<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<T>().map_err(|_| anyhow!("bad number `{t}`")))
        .collect()
}

pub fn parse_spider(s: &str) -> Result<SpiderSpec> {
    let (kind, rest) = s.split_once(':').ok_or_else(|| anyhow!("bad spider `{s}`: expected kind:args"))?;
    match kind.trim() {
        "star" => Ok(SpiderSpec::star(&numbers::<u32>(rest)?)),
        "morrison" => match numbers::<u32>(rest)?[..] {
            [a, b] => Ok(SpiderSpec::morrison(a, b)),
            _ => bail!("bad spider `{s}`: morrison takes two legs"),
        },
        "graph" => parse_graph(rest).with_context(|| format!("bad spider `{s}`")),
        other => bail!("unknown spider kind `{other}`"),
    }
}

fn parse_graph(rest: &str) -> Result<SpiderSpec> {
    let mut parts = rest.split(';');
    let n: usize = parts.next().unwrap_or("").trim().parse().map_err(|_| anyhow!("missing vertex count"))?;
    let (mut edges, mut at, mut legs) = (Vec::new(), Vec::new(), Vec::new());
    for p in parts {
        let (k, v) = p.split_once('=').ok_or_else(|| anyhow!("bad field `{p}`"))?;
        match k.trim() {
            "edges" => {
                for e in v.split(',').filter(|e| !e.trim().is_empty()) {
                    let (x, y) = e.split_once('-').ok_or_else(|| anyhow!("bad edge `{e}`"))?;
                    edges.push((x.trim().parse()?, y.trim().parse()?));
                }
            }
            "at" => at = numbers(v)?,
            "legs" => legs = numbers(v)?,
            other => bail!("unknown field `{other}`"),
        }
    }
    Ok(SpiderSpec::new(Graph::from_edges(n, &edges)?, at, legs)?)
}
