// jsdom has no 2D canvas; return null so painting code takes its
// headless path instead of logging "not implemented" errors.
if (typeof HTMLCanvasElement !== "undefined") {
  HTMLCanvasElement.prototype.getContext = (() => null) as typeof HTMLCanvasElement.prototype.getContext;
}
