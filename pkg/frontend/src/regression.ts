/** Ordinary least squares in log-log coordinates, float64 like the producer. */

export interface LogLogFit {
  slope: number;
  intercept: number; // in natural-log coordinates
}

export function logLogFit(xs: number[], ys: number[]): LogLogFit {
  if (xs.length !== ys.length || xs.length < 3) {
    throw new Error("need at least 3 paired points");
  }
  if (xs.some((v) => v <= 0) || ys.some((v) => v <= 0)) {
    throw new Error("log-log fit needs positive values");
  }
  const lx = xs.map(Math.log);
  const ly = ys.map(Math.log);
  const n = lx.length;
  const mx = lx.reduce((a, b) => a + b, 0) / n;
  const my = ly.reduce((a, b) => a + b, 0) / n;
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < n; i++) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx === 0) throw new Error("degenerate x values");
  const slope = sxy / sxx;
  return { slope, intercept: my - slope * mx };
}
