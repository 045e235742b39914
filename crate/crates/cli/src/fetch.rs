use std::env;
use std::fs;
use std::path::PathBuf;
use std::time::Duration;

use wtcensus::oeis::BUNDLED_A002212;

const BFILE_URL: &str = "https://oeis.org/A002212/b002212.txt";
const CACHE_FILE: &str = "b002212.txt";

fn cache_dir() -> PathBuf {
    env::var_os("WTCENSUS_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| env::temp_dir().join("wtcensus"))
}

/// Downloads the b-file and caches it. On network failure falls back to the
/// cached copy, then to the bundled excerpt, warning on stderr either way.
///
/// `WTCENSUS_OEIS_URL` overrides the download location.
pub fn fetch_bfile() -> (String, String) {
    let url = env::var("WTCENSUS_OEIS_URL").unwrap_or_else(|_| BFILE_URL.to_string());
    let cache = cache_dir().join(CACHE_FILE);
    let fetched = ureq::get(&url)
        .timeout(Duration::from_secs(20))
        .call()
        .map_err(|e| e.to_string())
        .and_then(|resp| resp.into_string().map_err(|e| e.to_string()));
    match fetched {
        Ok(body) => {
            if let Err(e) = fs::create_dir_all(cache_dir()).and_then(|_| fs::write(&cache, &body)) {
                eprintln!(
                    "warning: could not cache b-file at {}: {e}",
                    cache.display()
                );
            }
            (body, url)
        }
        Err(e) => match fs::read_to_string(&cache) {
            Ok(text) => {
                eprintln!(
                    "warning: fetch failed ({e}); using cached {}",
                    cache.display()
                );
                (text, cache.display().to_string())
            }
            Err(_) => {
                eprintln!("warning: fetch failed ({e}); using the bundled fixture");
                (BUNDLED_A002212.to_string(), "bundled fixture".to_string())
            }
        },
    }
}
