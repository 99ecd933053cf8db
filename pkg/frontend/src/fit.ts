export interface SlopeFit {
  slope: number;
  intercept: number;
  r2: number;
}

/**
 * Least-squares fit of ln(y) against ln(x); the same statistic the results
 * pipeline computes, so the annotated slope can be compared against it.
 */
export function logLogFit(xs: number[], ys: number[]): SlopeFit {
  if (xs.length !== ys.length || xs.length < 2) {
    throw new Error(`slope fit needs at least 2 points, got ${xs.length}`);
  }
  if (xs.some((v) => v <= 0) || ys.some((v) => v <= 0)) {
    throw new Error('slope fit needs strictly positive values');
  }
  const lx = xs.map(Math.log);
  const ly = ys.map(Math.log);
  const mx = mean(lx);
  const my = mean(ly);
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < lx.length; i++) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const slope = sxy / sxx;
  const intercept = my - slope * mx;
  let ssRes = 0;
  let ssTot = 0;
  for (let i = 0; i < lx.length; i++) {
    const resid = ly[i] - (intercept + slope * lx[i]);
    ssRes += resid * resid;
    ssTot += (ly[i] - my) * (ly[i] - my);
  }
  const r2 = 1 - (ssTot > 0 ? ssRes / ssTot : 0);
  return { slope, intercept, r2 };
}

function mean(values: number[]): number {
  let total = 0;
  for (const v of values) total += v;
  return total / values.length;
}
