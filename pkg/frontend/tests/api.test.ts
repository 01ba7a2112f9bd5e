import { afterEach, describe, expect, it } from 'vitest';

import { ApiClient, ApiError } from '../src/api';

interface Captured {
  url: string;
  init?: RequestInit;
}

const captured: Captured[] = [];
const realFetch = globalThis.fetch;

function stubFetch(status: number, body: unknown,
                   json: boolean = true): void {
  globalThis.fetch = (async (input: unknown, init?: RequestInit) => {
    captured.push({ url: String(input), init });
    return {
      ok: status >= 200 && status < 300,
      status,
      json: async () => {
        if (!json) throw new SyntaxError('not json');
        return JSON.parse(JSON.stringify(body));
      },
    };
  }) as typeof fetch;
}

afterEach(() => {
  globalThis.fetch = realFetch;
  captured.length = 0;
});

describe('ApiClient', () => {
  it('unwraps the artifact envelope around the theme map', async () => {
    const payload = { k: 2, themes: [] };
    stubFetch(200, {
      format: 'theme_map', version: 1, sha256: 'f00', payload,
    });
    const map = await new ApiClient().themeMap();
    expect(map).toEqual(payload);
    expect(captured[0].url).toBe('/v1/themes');
  });

  it('prefixes every path with the configured base', async () => {
    stubFetch(200, {});
    await new ApiClient('http://api.example:8765').about();
    expect(captured[0].url).toBe('http://api.example:8765/v1/about');
  });

  it('throws a typed error from the error envelope', async () => {
    stubFetch(404, { error: { code: 'not_found', message: 'no theme 99' } });
    const error = await new ApiClient().themeDetail(99)
      .then(() => null, (e: unknown) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect((error as ApiError).status).toBe(404);
    expect((error as ApiError).code).toBe('not_found');
    expect((error as ApiError).message).toBe('no theme 99');
  });

  it('falls back to a generic error when the body is not JSON', async () => {
    stubFetch(502, null, false);
    const error = await new ApiClient().about()
      .then(() => null, (e: unknown) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect((error as ApiError).code).toBe('error');
    expect((error as ApiError).message).toContain('502');
  });

  it('sends selections as a JSON PUT', async () => {
    stubFetch(200, {});
    await new ApiClient().putSelection('sid-1', ['a', 'b']);
    const { url, init } = captured[0];
    expect(url).toBe('/v1/sessions/sid-1/selection');
    expect(init?.method).toBe('PUT');
    expect(JSON.parse(String(init?.body))).toEqual({ doc_ids: ['a', 'b'] });
  });

  it('encodes ids and session parameters in paths', async () => {
    stubFetch(200, {});
    await new ApiClient().paper('doc/7', 's id');
    expect(captured[0].url).toBe('/v1/papers/doc%2F7?session=s%20id');
    stubFetch(200, {});
    await new ApiClient().wheel('d1', 'single', 4);
    expect(captured[1].url).toBe('/v1/papers/d1/wheel?variant=single&theme=4');
  });
});
