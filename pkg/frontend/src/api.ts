// Thin typed client for the /v1 HTTP API. The base URL is configurable so
// the app can run against a dev server on another port.

import type {
  AboutPayload,
  ArtifactEnvelope,
  ExcerptBody,
  MapPayload,
  PaperRecord,
  SessionPayload,
  StrategyEntryPayload,
  ThemeDetail,
  WheelPayload,
} from './types';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(private readonly base: string = '') {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    if (!response.ok) {
      let code = 'error';
      let message = `${response.status} on ${path}`;
      try {
        const body = await response.json();
        code = body.error?.code ?? code;
        message = body.error?.message ?? message;
      } catch {
        // non-JSON error body; keep the fallback message
      }
      throw new ApiError(response.status, code, message);
    }
    return response.json() as Promise<T>;
  }

  private put<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'PUT',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  about(): Promise<AboutPayload> {
    return this.request('/v1/about');
  }

  /** The theme map ships as a versioned artifact; unwrap its payload. */
  async themeMap(): Promise<MapPayload> {
    const doc =
      await this.request<ArtifactEnvelope<MapPayload>>('/v1/themes');
    return doc.payload;
  }

  themeDetail(themeId: number, session?: string): Promise<ThemeDetail> {
    const query = session ? `?session=${encodeURIComponent(session)}` : '';
    return this.request(`/v1/themes/${themeId}${query}`);
  }

  paper(docId: string, session?: string): Promise<PaperRecord> {
    const query = session ? `?session=${encodeURIComponent(session)}` : '';
    return this.request(`/v1/papers/${encodeURIComponent(docId)}${query}`);
  }

  wheel(docId: string, variant: 'multi' | 'single', theme?: number):
      Promise<WheelPayload> {
    const query = variant === 'single' ? `?variant=single&theme=${theme}` : '';
    return this.request(
      `/v1/papers/${encodeURIComponent(docId)}/wheel${query}`);
  }

  createSession(): Promise<SessionPayload> {
    return this.request('/v1/sessions', { method: 'POST' });
  }

  session(sessionId: string): Promise<SessionPayload> {
    return this.request(`/v1/sessions/${encodeURIComponent(sessionId)}`);
  }

  putSelection(sessionId: string, docIds: string[]): Promise<SessionPayload> {
    return this.put(`/v1/sessions/${encodeURIComponent(sessionId)}/selection`,
                    { doc_ids: docIds });
  }

  putStrategy(sessionId: string, entries: StrategyEntryPayload[]):
      Promise<SessionPayload> {
    return this.put(`/v1/sessions/${encodeURIComponent(sessionId)}/strategy`,
                    { entries });
  }

  reveal(sessionId: string): Promise<SessionPayload> {
    return this.request(
      `/v1/sessions/${encodeURIComponent(sessionId)}/reveal`,
      { method: 'POST' });
  }

  excerptMap(sessionId: string): Promise<ExcerptBody> {
    return this.request(
      `/v1/sessions/${encodeURIComponent(sessionId)}/excerpt-map`);
  }
}
